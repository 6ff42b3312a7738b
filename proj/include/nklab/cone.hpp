#pragma once

#include <array>
#include <vector>

#include "nklab/rng.hpp"
#include "nklab/sphere.hpp"
#include "nklab/surface.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

/// Point of the metric cone over the round 6-sphere, identified with
/// R^7 minus the origin through r * m.
struct ConePoint {
    double r;
    SpherePoint m;
    ConePoint(double radius, const SpherePoint& base);
    Vec7 ambient() const { return r * m.p; }
};

/// Cone tangent vector split into a radial part (coefficient of d/dr) and a
/// spherical part tangent at the link point.
struct ConeVec {
    double a = 0.0;
    Vec7 v{};
};

/// Identification of cone tangent vectors with ambient vectors at r*m.
Vec7 cone_to_ambient(const ConePoint& cp, const ConeVec& w);
ConeVec ambient_to_cone(const ConePoint& cp, const Vec7& w);

/// phi = r^2 dr ^ omega + r^3 Re Upsilon_0, with Upsilon_0 = -i Upsilon.
double cone_phi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                const ConeVec& w3);
/// psi = -r^3 dr ^ Im Upsilon_0 + (1/2) r^4 omega ^ omega.
double cone_psi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                const ConeVec& w3, const ConeVec& w4);

/// The flat constant-coefficient forms evaluated on the ambient images of the
/// same cone vectors; the independent second evaluator.
double flat_phi_on_cone(const ConePoint& cp, const ConeVec& w1,
                        const ConeVec& w2, const ConeVec& w3);
double flat_psi_on_cone(const ConePoint& cp, const ConeVec& w1,
                        const ConeVec& w2, const ConeVec& w3,
                        const ConeVec& w4);

/// One-time orientation calibration between the cone formula and the flat
/// 3-form, measured on a fixed frame at the north pole.
struct ConeCalibration {
    double sign = 1.0;      // applied globally to the cone forms
    double residual = 0.0;  // post-calibration mismatch at the pole frame
};
const ConeCalibration& cone_orientation_calibration();

/// Residuals of the r = 1 contraction identities that recover omega and
/// Upsilon_0 from phi and psi.
struct ConeContractionResiduals {
    double omega_residual = 0.0;
    double re_residual = 0.0;
    double im_residual = 0.0;
};
ConeContractionResiduals cone_contraction_residuals(const SpherePoint& m,
                                                    Rng& rng, int tuples);

/// Finite-difference exterior derivative of phi (resp. psi) on the cone,
/// using radial-plus-great-circle paths and canonical spherical extensions.
double cone_dphi(const ConePoint& cp, const std::array<ConeVec, 4>& w,
                 double h);
double cone_dpsi(const ConePoint& cp, const std::array<ConeVec, 5>& w,
                 double h);

/// | d(r^3 omega / 3) - phi | on a sampled tuple (primitive check).
double phi_primitive_residual(const ConePoint& cp,
                              const std::array<ConeVec, 3>& w, double h);
/// | d(-r^4 Im Upsilon_0 / 4) - psi | on a sampled tuple.
double psi_primitive_residual(const ConePoint& cp,
                              const std::array<ConeVec, 4>& w, double h);

struct AssociativitySample {
    double s = 0.0, t = 0.0;
    double residual = 0.0;     // | |phi(dr, ehat1, ehat2)| - 1 |
    double holo_defect = 0.0;  // paired holomorphicity defect of the patch
};
struct AssociativityReport {
    std::vector<AssociativitySample> samples;
    double max_residual = 0.0;
    double max_holo_defect = 0.0;
    /// (residual < tol) matched (defect < tol') at every sample, with
    /// tol' = sqrt(2 tol - tol^2) from residual = 1 - sqrt(1 - defect^2).
    bool equivalence_both_ways = false;
};
/// Calibration-backed associativity scan of the cone over a surface patch.
AssociativityReport associativity_check(const SurfacePatch& patch,
                                        int n_samples, double tol);

/// Structure-equation residuals of the rotated complex volume forms on the
/// sphere: d Re Upsilon_theta = 2 sin(theta) omega^omega,
/// d Im Upsilon_theta = -2 cos(theta) omega^omega, and
/// d omega = 3 (cos(theta) Re + sin(theta) Im) Upsilon_theta.
struct UpsilonThetaResiduals {
    double d_re = 0.0;
    double d_im = 0.0;
    double d_omega = 0.0;
};
UpsilonThetaResiduals upsilon_theta_residuals(double theta, Rng& rng,
                                              int tuples, double h);

ConePoint random_cone_point(Rng& rng);
ConeVec random_cone_vec(const ConePoint& cp, Rng& rng);

}  // namespace nklab
