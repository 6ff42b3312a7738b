#pragma once

#include <array>
#include <complex>
#include <functional>

#include "nklab/octonion.hpp"
#include "nklab/rng.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

/// The round unit 6-sphere in R^7 with the almost-complex structure
/// J_p(x) = p x x inherited from the cross product, the Kaehler form
/// omega(x,y) = <Jx,y>, the complex volume form Upsilon, the intrinsic
/// torsion P, and the curvature apparatus.  The structure has type constant
/// lambda = 1 throughout.
inline constexpr double kNkLambda = 1.0;

struct SpherePoint {
    Vec7 p;
    explicit SpherePoint(const Vec7& v);
};

/// v minus its radial component at p.
Vec7 project_tangent(const SpherePoint& p, const Vec7& v);

/// J_p(x) = p x x; tangent for any x (the radial part of x is annihilated).
Vec7 almost_J(const SpherePoint& p, const Vec7& x);

/// omega_p(x,y) = <J_p x, y> = phi0(p,x,y).
double omega(const SpherePoint& p, const Vec7& x, const Vec7& y);

/// Upsilon_p(x,y,z) = (p -| *phi0)(x,y,z) + i phi0(x,y,z).
std::complex<double> upsilon(const SpherePoint& p, const Vec7& x,
                             const Vec7& y, const Vec7& z);

/// Complex-trilinear extension of Upsilon; each argument is (real, imag).
std::complex<double> upsilon_c(const SpherePoint& p,
                               const std::pair<Vec7, Vec7>& x,
                               const std::pair<Vec7, Vec7>& y,
                               const std::pair<Vec7, Vec7>& z);

/// Orthonormal frame (e1..e6) of T_p S^6 with Je1 = e2, Je3 = e4, Je5 = e6 and
/// the phase of the last complex leg fixed so Upsilon(f1,f2,f3) = 1, where
/// f_k = (e_{2k-1} - i e_{2k})/2.
struct FrameSU3 {
    SpherePoint base;
    std::array<Vec7, 6> e{};
    explicit FrameSU3(const SpherePoint& b) : base(b) {}
};

/// Deterministic frame: Gram-Schmidt over ambient basis candidates in fixed
/// order, J-pairing forced, phase-fixed.
FrameSU3 su3_frame(const SpherePoint& p);

/// Upsilon evaluated on the frame's (f1,f2,f3); 1 within 1e-8 by construction.
std::complex<double> upsilon_on_frame(const FrameSU3& fr);

/// (Upsilon ^ conj(Upsilon))(e1,...,e6); the measured normalization constant.
/// The volume normalization asserts (-1)^3 (i/2)^3 times this equals 1.
std::complex<double> upsilon_wedge_conj(const FrameSU3& fr);

/// Canonical tangent extension of y in T_p S^6: q -> y - <y,q> q.  Its ambient
/// derivative is radial at p, so its Levi-Civita derivative vanishes at p and
/// pairwise Lie brackets of such extensions are radial at p.
Vec7 canonical_extension(const Vec7& y, const Vec7& q);

using Curve = std::function<Vec7(double)>;
using VecField = std::function<Vec7(double)>;

/// Levi-Civita derivative of the field V along the curve c at parameter t:
/// tangential projection of the 5-point ambient derivative.
Vec7 levi_civita(const Curve& c, const VecField& V, double t, double h);

/// Torsion P(X,Y) = (nabla_X J)(Y), closed form: tangential part of X x Y.
Vec7 torsion_P(const SpherePoint& p, const Vec7& X, const Vec7& Y);

/// Same tensor by its definition nabla_X(J Ytilde) - J(nabla_X Ytilde) using
/// canonical extensions and finite differences; independent oracle.
Vec7 torsion_P_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                  double h);

/// Nearly-Kaehler connection D_X V = nabla_X V + (1/2) P(X, JV) along a curve.
Vec7 nk_connection(const Curve& c, const VecField& V, double t, double h);

/// Curvature of the round metric, closed form:
/// R(X,Y,Z,W) = <X,W><Y,Z> - <X,Z><Y,W>  (sectional curvature +1).
double riemann_closed(const Vec7& X, const Vec7& Y, const Vec7& Z,
                      const Vec7& W);

/// Curvature by the commutator of covariant derivatives on canonical
/// extensions; independent derivative-based oracle.
double riemann_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                  const Vec7& Z, const Vec7& W, double h);

/// |R(X,Y,Y,X) + R(X,JY,JY,X) + R(X,JX,Y,JY) - 2 lambda^2 ||P(X,Y)||^2|.
double curvature_identity_residual(const SpherePoint& p, const Vec7& X,
                                   const Vec7& Y);

/// (omega ^ omega)(v1,v2,v3,v4) by the shuffle convention.
double omega_wedge_omega(const SpherePoint& p, const Vec7& v1, const Vec7& v2,
                         const Vec7& v3, const Vec7& v4);

/// Finite-difference exterior derivatives with canonical extensions (bracket
/// contributions are radial and annihilated by the forms).
double domega_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                 const Vec7& Z, double h);
double d_re_upsilon_fd(const SpherePoint& p, const std::array<Vec7, 4>& X,
                       double h);
/// (nabla_X omega)(Y,Z) by differentiating omega on canonical extensions.
double nabla_omega_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                      const Vec7& Z, double h);

struct StructureResiduals {
    double domega_vs_im_upsilon = 0.0;   // d(omega) - 3 Im Upsilon
    double dre_upsilon_vs_omsq = 0.0;    // d(Re Upsilon) - 2 omega^omega
    double nabla_omega_vs_third = 0.0;   // nabla omega - (1/3) d(omega)
};
/// Max residuals over seeded random tangent tuples at p.
StructureResiduals structure_residuals(const SpherePoint& p, Rng& rng,
                                       int tuples, double h);

/// Rotated copies of Upsilon: Upsilon_theta = e^{i theta} Upsilon_0 with
/// Upsilon_0 = -i Upsilon (so theta = 0 matches the cone conventions).
/// Returns (Re, Im) evaluated on tangent vectors.
std::complex<double> upsilon_theta(const SpherePoint& p, double theta,
                                   const Vec7& x, const Vec7& y,
                                   const Vec7& z);

/// Random unit tangent vector at p.
Vec7 random_tangent(const SpherePoint& p, Rng& rng);

}  // namespace nklab
