#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nklab/lagrangian.hpp"
#include "nklab/sphere.hpp"
#include "nklab/surface.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

/// A variation field given by an ambient recipe; evaluation projects the raw
/// value onto the normal space of the patch, so the stored function only has
/// to be smooth on the ambient sphere.
struct NormalField {
    std::string name;
    std::function<Vec7(const Vec7&)> ambient;
};

Vec7 eval_field(const SurfacePatch& patch, const NormalField& field, double s,
                double t);
PatchField as_patch_field(const SurfacePatch& patch, const NormalField& field);

// ---------------------------------------------------------------------------
// pointwise differential operators on normal fields
// ---------------------------------------------------------------------------

struct PerpDerivs {
    Vec7 d1, d2;  // normal covariant derivatives along the orthonormal frame
};

/// Normal covariant derivative along a tangent vector X at (s, t).
Vec7 nabla_perp(const SurfacePatch& patch, double s, double t, const Vec7& x,
                const PatchField& field, double h = 1e-3);

PerpDerivs nabla_perp_frame(const SurfacePatch& patch, double s, double t,
                            const PatchField& field, double h = 1e-3);

/// First-order operator D_X eta = nabla^perp_X eta + J nabla^perp_{JX} eta.
Vec7 dirac_D(const SurfacePatch& patch, double s, double t, const Vec7& x,
             const PatchField& field, double h = 1e-3);

struct DFrame {
    Vec7 d1, d2;  // D along e1 and along e2 = J e1
};
DFrame dirac_D_frame(const SurfacePatch& patch, double s, double t,
                     const PatchField& field, double h = 1e-3);

/// Connection 1-form reading alpha_eta(X) = <nabla^perp_X eta, J eta>.
double alpha_form(const SurfacePatch& patch, double s, double t, const Vec7& x,
                  const PatchField& field, double h = 1e-3);

/// Exterior derivative d(alpha_eta)(e1, e2) at a point, via coordinate finite
/// differences divided by sqrt(det g).
double dalpha_frame(const SurfacePatch& patch, double s, double t,
                    const PatchField& field, double h = 1e-3);

/// Normal curvature pairing R_perp(e1, e2, eta, J eta) via the finite
/// difference commutator of nabla_perp along the coordinate lines.
double rperp_frame(const SurfacePatch& patch, double s, double t,
                   const PatchField& field, double h = 1e-3);

// residuals of the pointwise identities used by the boundary-free rewrite
double curvature_exchange_residual(const SurfacePatch& patch, double s, double t,
                        const PatchField& field, double h = 1e-3);
double bochner_identity_residual(const SurfacePatch& patch, double s, double t,
                        const PatchField& field, double h = 1e-3);

// ---------------------------------------------------------------------------
// boundary data
// ---------------------------------------------------------------------------

struct BoundaryFrameData {
    Vec7 point;
    Vec7 tangent;        // unit boundary tangent T
    Vec7 conormal;       // outer unit conormal nu
    double jt_defect;    // | J T + nu | when the boundary pair is adapted
};

BoundaryFrameData boundary_frame(const SurfacePatch& patch, double s);

/// max over boundary samples of the distance of eta from the Lagrangian
/// tangent space (admissibility check).
double boundary_tangency_residual(const SurfacePatch& patch,
                                  const LagrangianPatch& lag,
                                  const NormalField& field, int samples = 64);

// ---------------------------------------------------------------------------
// one-parameter families of surfaces
// ---------------------------------------------------------------------------

/// A family of maps into the sphere, smooth in (s, t, eps) with F(.,.,0) the
/// base patch.
struct Family {
    std::string name;
    std::function<Vec7(double s, double t, double eps)> map;
};

/// Geodesic exponential family F = cos(eps |eta|) u + eps sinc(eps |eta|) eta.
Family exp_family(const SurfacePatch& patch, const NormalField& field);

/// Exponential family with a smooth boundary-collar correction that projects
/// the boundary curve back onto the Lagrangian.
Family l_projected_family(const SurfacePatch& patch, const LagrangianPatch& lag,
                          const NormalField& field);

/// Residual of the boundary identity <acc, nu> + <nabla^perp_T eta, J eta> = 0
/// for the family's boundary acceleration acc = d^2/deps^2 F(s, t0, eps).
double boundary_compatibility_residual(const SurfacePatch& patch, const Family& family,
                        const PatchField& field, double s, double h = 1e-3,
                        double eps = 1e-3);

// ---------------------------------------------------------------------------
// area and its variations
// ---------------------------------------------------------------------------

double area(const SurfacePatch& patch, std::size_t nodes);
/// Area with a refinement consistency check; throws AccuracyError if the
/// doubled grid disagrees beyond rel_tol.
double area_checked(const SurfacePatch& patch, std::size_t nodes,
                    double rel_tol = 1e-8);

double family_area(const SurfacePatch& domain_ref, const Family& family,
                   double eps, std::size_t nodes);

/// Independent oracle: second central difference of eps -> area(F_eps).
double area_second_difference(const SurfacePatch& patch, const Family& family,
                              std::size_t nodes, double eps = 1e-3);

struct GeneralSecondVariation {
    double gradient;   // integral of |nabla_perp eta|^2
    double shape;      // integral of |W eta|^2
    double curvature;  // integral of sum_i Rbar(eta, e_i, e_i, eta)
    double boundary;   // boundary integral of <acc, nu>
    double value;      // gradient - shape - curvature + boundary
};

/// Second variation of area from the general formula; requires the base patch
/// to be minimal and uses the family only for the boundary acceleration term.
GeneralSecondVariation second_variation_general(const SurfacePatch& patch,
                                                const NormalField& field,
                                                const Family& family,
                                                std::size_t nodes,
                                                std::size_t boundary_nodes,
                                                double h = 1e-3,
                                                double eps = 1e-3);

struct NkSecondVariation {
    double half_d;   // integral of (1/2) |D eta|^2
    double torsion;  // integral of the torsion pairing
    double mass;     // integral of 2 lambda^2 |eta|^2
    double value;    // half_d + torsion - mass
};

/// Boundary-free rewrite of the second variation, valid for admissible fields
/// on minimal surfaces with Lagrangian free boundary.
NkSecondVariation second_variation_nk(const SurfacePatch& patch,
                                      const NormalField& field,
                                      std::size_t nodes, double h = 1e-3);

/// Integrand of the boundary-free rewrite evaluated with an arbitrary unit
/// tangent direction e (frame independence probe).
double nk_integrand(const SurfacePatch& patch, double s, double t,
                    const PatchField& field, const Vec7& e, double h = 1e-3);

struct StokesCheck {
    double interior;  // integral of d(alpha) over the patch
    double boundary;  // boundary integral of alpha(T)
};
/// Both sides of the Stokes step connecting the general and rewritten forms.
StokesCheck alpha_stokes(const SurfacePatch& patch, const NormalField& field,
                         std::size_t nodes, std::size_t boundary_nodes,
                         double h = 1e-3);

// ---------------------------------------------------------------------------
// pinned admissible basis on the Lagrangian half-sphere configuration
// ---------------------------------------------------------------------------

/// Sixteen admissible variation fields: low ambient harmonics times the flat
/// legs of the Lagrangian plane, plus collar-damped copies on the remaining
/// normal legs.
std::vector<NormalField> admissible_basis(const LagrangianPatch& lag);

}  // namespace nklab
