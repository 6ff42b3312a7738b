#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nklab/lagrangian.hpp"
#include "nklab/surface.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

/// Sampled data of a complex bundle with a real subbundle along a closed
/// boundary loop: a unitary trivialization frame and an orthonormal frame of
/// the real subbundle at each sample, plus the complex structure at each base
/// point.
struct MaslovLoopData {
    std::string name;
    std::vector<double> loop;                      // parameter samples (closed)
    std::vector<Vec7> base;                        // boundary points
    std::vector<std::vector<Vec7>> bundle_frames;  // per sample, k frame vectors
    std::vector<std::vector<Vec7>> lagrangian_frames;  // per sample, k vectors
    std::function<Vec7(const Vec7& base_pt, const Vec7& v)> J;
};

struct MaslovResult {
    int index = 0;            // winding of the squared determinant
    double winding_defect = 0.0;  // distance of the raw winding from an integer
    double min_det = 0.0;         // min |det A| over the loop
    double max_step_phase = 0.0;  // largest per-step phase increment
};

/// Winding number of det^2 of the real-subbundle frame in the unitary
/// trivialization.  Validates continuity of the data and the totally-real
/// condition; refuses to round when the winding is far from an integer.
MaslovResult maslov_index(const MaslovLoopData& data, double int_tol = 0.02);

/// Transported unitary trivializations of the tangent and normal bundles of a
/// disk-type patch (s-periodic, pole edge at t = t1), evaluated on the
/// boundary loop t = t0.  Transport runs along meridians from a single fixed
/// frame at the pole: tangentially by the canonical-connection parallel
/// transport, normally by the quaternion model of the normal bundle.
struct BoundaryTrivialization {
    std::vector<double> s;
    std::vector<Vec7> base;
    std::vector<Vec7> u1;                // tangent frame vector
    std::vector<std::array<Vec7, 2>> v;  // normal frame pair
};

BoundaryTrivialization transport_boundary_trivialization(
    const SurfacePatch& patch, int samples, int rk_steps = 256);

/// Residual of the quaternion model of J on the normal bundle: J acting on a
/// normal vector vs left multiplication by the model imaginary quaternion.
double quaternion_model_residual(const SurfacePatch& patch, int samples);

/// Loop data for the pair (T Sigma, T boundary).
MaslovLoopData tangent_loop_data(const SurfacePatch& patch, int samples,
                                 int rk_steps = 256);
/// Loop data for the pair (N Sigma, F) with F = TL intersect N.
MaslovLoopData normal_loop_data(const SurfacePatch& patch,
                                const LagrangianPatch& lag, int samples,
                                int rk_steps = 256);
/// Loop data for the full pair (TS^6 restricted to the surface, TL).
MaslovLoopData full_loop_data(const SurfacePatch& patch,
                              const LagrangianPatch& lag, int samples,
                              int rk_steps = 256);

/// Synthetic flat-disk model (T D, T boundary) in a constant trivialization;
/// calibrates the sign and normalization of the winding.
MaslovLoopData disk_model_loop(int samples);

/// Loop data with the trivialization rotated pointwise by the angle function
/// theta(parameter); a periodic, null-homotopic theta must not change the
/// index.
MaslovLoopData gauge_rotated(const MaslovLoopData& data,
                             const std::function<double(double)>& theta);

struct MaslovDecomposition {
    int tangent = 0;
    int normal = 0;
    int full = 0;
    bool additive = false;
};

/// Computes the three Maslov indices independently and checks the additivity
/// over the splitting of the restricted tangent bundle.
MaslovDecomposition maslov_decomposition_check(const SurfacePatch& patch,
                                               const LagrangianPatch& lag,
                                               int samples, int rk_steps = 256);

}  // namespace nklab
