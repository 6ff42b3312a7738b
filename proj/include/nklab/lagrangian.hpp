#pragma once

#include <array>
#include <string>
#include <vector>

#include "nklab/rng.hpp"
#include "nklab/sphere.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

struct CoassociativeSearchResult {
    std::array<int, 4> axes;  // ambient axes spanning the coassociative 4-plane
    double phi_residual;      // max |phi0| over orthonormal triples of the plane
    int candidates_tested;
};

/// Deterministic brute-force search over coordinate 4-planes containing e1 and
/// e2 (so the link S^3 contains the boundary great circle of the half-sphere):
/// first coassociative hit in ascending axis order wins.
CoassociativeSearchResult find_coassociative_plane(double tol = 1e-10);

/// Totally geodesic Lagrangian link L = S^6 intersected with a coassociative
/// 4-plane W, presented both as a 3-parameter embedding and as a tangent-space
/// oracle.
class LagrangianPatch {
  public:
    explicit LagrangianPatch(const std::array<int, 4>& axes);

    const std::array<int, 4>& axes() const { return axes_; }
    std::string id() const;

    /// Hyperspherical embedding of the link.
    Vec7 embed(double a, double b, double c) const;
    /// First-derivative jet: value and the three coordinate partials.
    std::array<Vec7, 4> embed_jet1(double a, double b, double c) const;

    bool contains(const Vec7& q, double tol) const;
    /// Closest point on L; iterative projection with a 1e-10 stop.
    Vec7 closest_point(const Vec7& q) const;
    /// Orthonormal basis of T_q L for q on L.
    std::array<Vec7, 3> tangent_basis(const Vec7& q) const;
    /// max |omega(x,y)| over the tangent basis pairs at q (Lagrangian check).
    double omega_residual_at(const Vec7& q) const;
    /// max omega residual over seeded random points of L.
    double omega_residual(int samples, Rng& rng) const;
    /// Distance of v from T_q L (norm of the component off the tangent space).
    double tangent_distance(const Vec7& q, const Vec7& v) const;

  private:
    std::array<int, 4> axes_;
};

/// Orthonormal basis of the intersection of two subspaces, via the spectrum of
/// the composed projectors; eigenvalues above 1 - tol count as intersection.
std::vector<Vec7> subspace_intersection(const std::vector<Vec7>& a_basis,
                                        const std::vector<Vec7>& b_basis,
                                        double tol = 1e-8);

}  // namespace nklab
