#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>

#include "nklab/dual.hpp"
#include "nklab/sphere.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

struct Domain {
    double s0 = 0.0, s1 = 1.0, t0 = 0.0, t1 = 1.0;
};

/// Order-2 jet of a patch map at a parameter point.
struct Jet2S {
    Vec7 p, us, ut, uss, ust, utt;
};

/// Order-3 partials, available on demand by differencing order-2 jets.
struct Jet3S {
    Vec7 usss, usst, ustt, uttt;
};

/// A twice-differentiable parametrized surface in S^6.  The map must itself be
/// spherical (renormalization is forbidden); this is validated, not enforced.
/// The boundary, when present, is the edge t = t0 of the parameter rectangle,
/// positively oriented in increasing s (so T = unit d/ds and the outer
/// conormal is -unit d/dt).
class SurfacePatch {
  public:
    virtual ~SurfacePatch() = default;
    virtual std::string id() const = 0;
    virtual std::string description() const = 0;
    virtual Domain domain() const = 0;
    virtual bool has_boundary() const = 0;
    virtual Jet2S jets(double s, double t) const = 0;

    Vec7 point(double s, double t) const { return jets(s, t).p; }
    /// Third-order partials by central differencing of exact 2-jets.
    Jet3S jets3_fd(double s, double t, double h) const;
};

/// Patch given by a closed-form parametrization evaluated through 2-jets, so
/// first and second derivatives are exact to rounding.
class AnalyticPatch final : public SurfacePatch {
  public:
    using JetMap = std::function<V7<Jet2>(const Jet2&, const Jet2&)>;
    AnalyticPatch(std::string id, std::string description, Domain dom,
                  bool boundary, JetMap map);

    std::string id() const override { return id_; }
    std::string description() const override { return descr_; }
    Domain domain() const override { return dom_; }
    bool has_boundary() const override { return boundary_; }
    Jet2S jets(double s, double t) const override;

  private:
    std::string id_, descr_;
    Domain dom_;
    bool boundary_;
    JetMap map_;
};

/// Adapter for black-box point evaluators: jets from order-2 central stencils
/// with documented truncation error O(h^4) (first) and O(h^2) (second).
class FdJetPatch final : public SurfacePatch {
  public:
    using PointMap = std::function<Vec7(double, double)>;
    FdJetPatch(std::string id, Domain dom, bool boundary, PointMap map,
               double h = 1e-4);

    std::string id() const override { return id_; }
    std::string description() const override {
        return "finite-difference jet adapter";
    }
    Domain domain() const override { return dom_; }
    bool has_boundary() const override { return boundary_; }
    Jet2S jets(double s, double t) const override;

  private:
    std::string id_;
    Domain dom_;
    bool boundary_;
    PointMap map_;
    double h_;
};

/// Smallest singular value of the differential [u_s u_t]; immersion scale.
double immersion_min_sv(const Jet2S& j);

/// Induced area element sqrt(det g).
double sqrt_g(const Jet2S& j);

/// Orthonormal tangent frame (e1, e2) with e1 along u_s, e2 the Gram-Schmidt
/// complement of u_t.
std::array<Vec7, 2> tangent_frame(const Jet2S& j);

/// Component of v normal to the surface inside T S^6.
Vec7 project_normal_space(const Jet2S& j, const Vec7& v);

/// Coordinates (a, b) with X = a u_s + b u_t (Gram solve).
std::array<double, 2> coordinate_components(const Jet2S& j, const Vec7& X);

/// || normal part of J e1 ||; zero iff the tangent plane is J-invariant.
double holomorphicity_defect(const Jet2S& j);
/// Second, equivalent criterion: |omega(e1,e2)| - 1 (omega|_Sigma vs area).
double holomorphicity_omega_gap(const Jet2S& j);
bool is_holomorphic_point(const Jet2S& j, double tol);

/// Throws if the patch is off-sphere or non-immersed anywhere on a
/// margin-inset sample grid.
void validate_patch(const SurfacePatch& patch, int grid_n, double margin,
                    double sphere_tol, double sv_floor);

/// II(X,Y): normal component of the ambient second derivative, from exact
/// jets; symmetric.  X, Y must be tangent at the point.
Vec7 second_fundamental_form(const Jet2S& j, const Vec7& X, const Vec7& Y);

/// Mean curvature vector: trace of II over an orthonormal tangent frame.
Vec7 mean_curvature(const Jet2S& j);

/// A field along the patch in parameter coordinates (already projected as the
/// construction dictates).
using PatchField = std::function<Vec7(double, double)>;

/// Pointwise projection of an ambient recipe onto the normal space.
PatchField make_normal_field(const SurfacePatch& patch,
                             std::function<Vec7(const Vec7&)> ambient);

/// W_X eta = - tangential part of the derivative of eta along X (5-point FD
/// in parameters).
Vec7 shape_operator(const SurfacePatch& patch, double s, double t,
                    const Vec7& X, const PatchField& eta, double h);

/// nabla-perp_X eta: normal part of the derivative of eta along X.
Vec7 normal_connection(const SurfacePatch& patch, double s, double t,
                       const Vec7& X, const PatchField& eta, double h);

/// Adapted U(2)-frame: SU(3)-frame with T Sigma = span(e1,e2), e1 along u_s.
struct AdaptedU2Frame {
    double s = 0.0, t = 0.0;
    FrameSU3 frame;
    explicit AdaptedU2Frame(const FrameSU3& f) : frame(f) {}
};
AdaptedU2Frame adapt_u2_frame(const SurfacePatch& patch, double s, double t,
                              double holo_tol = 1e-6);
/// Same construction with e1 rotated by theta inside the tangent plane
/// (admissible frame change; used for frame-independence tests).
AdaptedU2Frame adapt_u2_frame_rotated(const SurfacePatch& patch, double s,
                                      double t, double theta,
                                      double holo_tol = 1e-6);
/// Adapted frame with e1 forced to a given unit tangent direction.
AdaptedU2Frame adapt_u2_frame_along(const SurfacePatch& patch, double s,
                                    double t, const Vec7& e1_dir,
                                    double holo_tol = 1e-6);

/// Hopf coefficients read off the two normal expansions of II(e1,e1) and
/// II(e1,e2); the readings must agree or the input violates the model.
struct HopfCoefficients {
    std::complex<double> kappa, mu;
    double consistency = 0.0;  // max disagreement between the two readings
};
HopfCoefficients hopf_coefficients(const SurfacePatch& patch,
                                   const AdaptedU2Frame& fr,
                                   double tol = 1e-6);
/// sqrt(|kappa|^2 + |mu|^2): frame-independent magnitude of the Hopf section.
double hopf_magnitude(const HopfCoefficients& h);

struct GeodesicBall {
    SpherePoint center;
    double radius;
};

struct BoundaryOrthoResult {
    double on_sphere_residual = 0.0;  // boundary point vs the geodesic sphere
    double angle_defect = 0.0;        // angle between conormal and sphere normal
    double umbilicity_residual = 0.0; // max ||A(X) - cot(r) X|| on sampled X
};
/// Free-boundary mechanics at the boundary parameter s: requires the boundary
/// point to lie on the geodesic sphere bounding the ball.
BoundaryOrthoResult boundary_orthogonality(const SurfacePatch& patch,
                                           const GeodesicBall& ball, double s,
                                           int umbilic_dirs = 4);

struct RigidityReport {
    double max_II12 = 0.0;         // || II(e1,e2) || with e1 = conormal
    double max_phi = 0.0;          // Hopf magnitude along the boundary
    double max_holo_defect = 0.0;  // J-invariance defect along the boundary
    double max_angle_defect = 0.0; // free-boundary angle defect
    bool flagged = false;
    std::string reason;
};
/// Rigidity probe: samples the boundary, checks orthogonality, and
/// evaluates II(e1,e2) and the Hopf magnitude in the frame with e1 = conormal.
/// Non-orthogonal or non-holomorphic configurations are flagged.
RigidityReport rigidity_probe(const SurfacePatch& patch,
                              const GeodesicBall& ball, int nsamples,
                              double tol);

}  // namespace nklab
