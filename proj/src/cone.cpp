#include "nklab/cone.hpp"

#include <cmath>
#include <functional>

#include "nklab/errors.hpp"
#include "nklab/octonion.hpp"

namespace nklab {

namespace {

template <class F>
double fd5_scalar(F&& f, double h) {
    return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

/// Radial-plus-great-circle path through cp with initial cone velocity w.
ConePoint cone_path(const ConePoint& cp, const ConeVec& w, double tau) {
    const double r = cp.r + w.a * tau;
    const double nv = norm(w.v);
    if (nv < 1e-14) return ConePoint(r, cp.m);
    const Vec7 vhat = (1.0 / nv) * w.v;
    const Vec7 dir =
        std::cos(tau * nv) * cp.m.p + std::sin(tau * nv) * vhat;
    return ConePoint(r, SpherePoint(dir));
}

/// Canonical extension of a cone vector to nearby cone points: radial part
/// kept, spherical part extended tangentially.
ConeVec extend_cone_vec(const ConeVec& w, const ConePoint& to) {
    return ConeVec{w.a, canonical_extension(w.v, to.m.p)};
}

/// Finite-difference exterior derivative of a K-form on the cone.  Canonical
/// extensions commute at the base point, so no bracket terms appear.
template <std::size_t K, class Form>
double cone_exterior_d(const ConePoint& cp, const std::array<ConeVec, K + 1>& w,
                       Form&& form, double h) {
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t i = 0; i <= K; ++i) {
        auto slice = [&](double tau) {
            const ConePoint q = cone_path(cp, w[i], tau);
            std::array<ConeVec, K> rest;
            std::size_t out = 0;
            for (std::size_t j = 0; j <= K; ++j) {
                if (j == i) continue;
                rest[out++] = extend_cone_vec(w[j], q);
            }
            return form(q, rest);
        };
        acc += sign * fd5_scalar(slice, h);
        sign = -sign;
    }
    return acc;
}

double raw_cone_phi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                    const ConeVec& w3) {
    const double r2 = cp.r * cp.r;
    const double r3 = r2 * cp.r;
    const double wedge = w1.a * omega(cp.m, w2.v, w3.v) -
                         w2.a * omega(cp.m, w1.v, w3.v) +
                         w3.a * omega(cp.m, w1.v, w2.v);
    // Re Upsilon_0 = Im Upsilon
    const double re_u0 = upsilon(cp.m, w1.v, w2.v, w3.v).imag();
    return r2 * wedge + r3 * re_u0;
}

double raw_cone_psi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                    const ConeVec& w3, const ConeVec& w4) {
    const double r3 = cp.r * cp.r * cp.r;
    const double r4 = r3 * cp.r;
    // Im Upsilon_0 = -Re Upsilon
    auto im_u0 = [&](const ConeVec& x, const ConeVec& y, const ConeVec& z) {
        return -upsilon(cp.m, x.v, y.v, z.v).real();
    };
    const double wedge = w1.a * im_u0(w2, w3, w4) - w2.a * im_u0(w1, w3, w4) +
                         w3.a * im_u0(w1, w2, w4) - w4.a * im_u0(w1, w2, w3);
    const double omsq = omega_wedge_omega(cp.m, w1.v, w2.v, w3.v, w4.v);
    return -r3 * wedge + 0.5 * r4 * omsq;
}

}  // namespace

ConePoint::ConePoint(double radius, const SpherePoint& base)
    : r(radius), m(base) {
    if (!(r > 0.0)) throw DomainError("cone radius must be positive");
}

Vec7 cone_to_ambient(const ConePoint& cp, const ConeVec& w) {
    return w.a * cp.m.p + cp.r * w.v;
}

ConeVec ambient_to_cone(const ConePoint& cp, const Vec7& w) {
    const double a = dot(w, cp.m.p);
    return ConeVec{a, (1.0 / cp.r) * (w - a * cp.m.p)};
}

double flat_phi_on_cone(const ConePoint& cp, const ConeVec& w1,
                        const ConeVec& w2, const ConeVec& w3) {
    static const AltForm3 phi = phi0();
    return phi(cone_to_ambient(cp, w1), cone_to_ambient(cp, w2),
               cone_to_ambient(cp, w3));
}

double flat_psi_on_cone(const ConePoint& cp, const ConeVec& w1,
                        const ConeVec& w2, const ConeVec& w3,
                        const ConeVec& w4) {
    static const AltForm4 psi = star_phi0();
    return psi(cone_to_ambient(cp, w1), cone_to_ambient(cp, w2),
               cone_to_ambient(cp, w3), cone_to_ambient(cp, w4));
}

const ConeCalibration& cone_orientation_calibration() {
    static const ConeCalibration cal = [] {
        const ConePoint pole(1.0, SpherePoint(basis_vec(6)));
        auto sph = [](int i) { return ConeVec{0.0, basis_vec(i)}; };
        const ConeVec dr{1.0, Vec7{}};
        const ConeVec mixed1{0.7, 0.3 * basis_vec(0) + 0.4 * basis_vec(2)};
        const ConeVec mixed2{-0.2, 0.5 * basis_vec(1) + 0.1 * basis_vec(5)};
        const std::array<std::array<ConeVec, 3>, 6> tuples = {
            std::array<ConeVec, 3>{dr, sph(0), sph(5)},
            {dr, sph(1), sph(3)},
            {sph(0), sph(1), sph(2)},
            {sph(1), sph(2), sph(4)},
            {mixed1, sph(3), sph(4)},
            {mixed2, sph(0), mixed1}};
        double num = 0.0;
        for (const auto& tp : tuples) {
            num += raw_cone_phi(pole, tp[0], tp[1], tp[2]) *
                   flat_phi_on_cone(pole, tp[0], tp[1], tp[2]);
        }
        ConeCalibration c;
        c.sign = num >= 0.0 ? 1.0 : -1.0;
        for (const auto& tp : tuples) {
            const double diff =
                c.sign * raw_cone_phi(pole, tp[0], tp[1], tp[2]) -
                flat_phi_on_cone(pole, tp[0], tp[1], tp[2]);
            c.residual = std::max(c.residual, std::abs(diff));
        }
        if (c.residual > 1e-7) {
            throw ModelViolationError(
                "cone orientation calibration failed: the cone and flat "
                "3-forms disagree beyond an overall sign");
        }
        return c;
    }();
    return cal;
}

double cone_phi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                const ConeVec& w3) {
    return cone_orientation_calibration().sign * raw_cone_phi(cp, w1, w2, w3);
}

double cone_psi(const ConePoint& cp, const ConeVec& w1, const ConeVec& w2,
                const ConeVec& w3, const ConeVec& w4) {
    return cone_orientation_calibration().sign *
           raw_cone_psi(cp, w1, w2, w3, w4);
}

ConeContractionResiduals cone_contraction_residuals(const SpherePoint& m,
                                                    Rng& rng, int tuples) {
    const ConePoint cp(1.0, m);
    const ConeVec dr{1.0, Vec7{}};
    ConeContractionResiduals out;
    for (int k = 0; k < tuples; ++k) {
        const ConeVec x{0.0, random_tangent(m, rng)};
        const ConeVec y{0.0, random_tangent(m, rng)};
        const ConeVec z{0.0, random_tangent(m, rng)};
        const double om = omega(m, x.v, y.v);
        out.omega_residual = std::max(
            out.omega_residual, std::abs(cone_phi(cp, dr, x, y) - om));
        const std::complex<double> u0 =
            std::complex<double>(0.0, -1.0) * upsilon(m, x.v, y.v, z.v);
        out.re_residual = std::max(
            out.re_residual, std::abs(cone_phi(cp, x, y, z) - u0.real()));
        // Im Upsilon_0 = -(dr contracted into psi) restricted to the link
        out.im_residual = std::max(
            out.im_residual,
            std::abs(-cone_psi(cp, dr, x, y, z) - u0.imag()));
    }
    return out;
}

double cone_dphi(const ConePoint& cp, const std::array<ConeVec, 4>& w,
                 double h) {
    return cone_exterior_d<3>(
        cp, w,
        [](const ConePoint& q, const std::array<ConeVec, 3>& v) {
            return cone_phi(q, v[0], v[1], v[2]);
        },
        h);
}

double cone_dpsi(const ConePoint& cp, const std::array<ConeVec, 5>& w,
                 double h) {
    return cone_exterior_d<4>(
        cp, w,
        [](const ConePoint& q, const std::array<ConeVec, 4>& v) {
            return cone_psi(q, v[0], v[1], v[2], v[3]);
        },
        h);
}

double phi_primitive_residual(const ConePoint& cp,
                              const std::array<ConeVec, 3>& w, double h) {
    const double sign = cone_orientation_calibration().sign;
    const double d_of_a = cone_exterior_d<2>(
        cp, w,
        [sign](const ConePoint& q, const std::array<ConeVec, 2>& v) {
            return sign * (q.r * q.r * q.r / 3.0) * omega(q.m, v[0].v, v[1].v);
        },
        h);
    return std::abs(d_of_a - cone_phi(cp, w[0], w[1], w[2]));
}

double psi_primitive_residual(const ConePoint& cp,
                              const std::array<ConeVec, 4>& w, double h) {
    const double sign = cone_orientation_calibration().sign;
    const double d_of_b = cone_exterior_d<3>(
        cp, w,
        [sign](const ConePoint& q, const std::array<ConeVec, 3>& v) {
            const double r4 = q.r * q.r * q.r * q.r;
            const double im_u0 =
                -upsilon(q.m, v[0].v, v[1].v, v[2].v).real();
            return sign * (-r4 / 4.0) * im_u0;
        },
        h);
    return std::abs(d_of_b - cone_psi(cp, w[0], w[1], w[2], w[3]));
}

AssociativityReport associativity_check(const SurfacePatch& patch,
                                        int n_samples, double tol) {
    const Domain d = patch.domain();
    const double ms = 1e-3 * (d.s1 - d.s0);
    const double mt = 1e-3 * (d.t1 - d.t0);
    AssociativityReport rep;
    const double tol_prime = std::sqrt(std::max(0.0, 2.0 * tol - tol * tol));
    bool equiv = true;
    for (int k = 0; k < n_samples; ++k) {
        const double fs = std::fmod(0.618033988749895 * (k + 1), 1.0);
        const double ft = std::fmod(0.754877666246693 * (k + 1), 1.0);
        const double s = d.s0 + ms + (d.s1 - d.s0 - 2 * ms) * fs;
        const double t = d.t0 + mt + (d.t1 - d.t0 - 2 * mt) * ft;
        const Jet2S j = patch.jets(s, t);
        const auto tf = tangent_frame(j);
        const ConePoint cp(1.0, SpherePoint(j.p));
        const ConeVec dr{1.0, Vec7{}};
        const double val =
            cone_phi(cp, dr, ConeVec{0.0, tf[0]}, ConeVec{0.0, tf[1]});
        AssociativitySample smp;
        smp.s = s;
        smp.t = t;
        smp.residual = std::abs(std::abs(val) - 1.0);
        smp.holo_defect = holomorphicity_defect(j);
        if ((smp.residual < tol) != (smp.holo_defect < tol_prime)) {
            equiv = false;
        }
        rep.max_residual = std::max(rep.max_residual, smp.residual);
        rep.max_holo_defect = std::max(rep.max_holo_defect, smp.holo_defect);
        rep.samples.push_back(smp);
    }
    rep.equivalence_both_ways = equiv;
    return rep;
}

namespace {

using SphereForm3 =
    std::function<double(const SpherePoint&, const Vec7&, const Vec7&,
                         const Vec7&)>;

/// d of a 3-form on the sphere via canonical extensions along normalized
/// chords; extensions commute at the base point.
double sphere_d3(const SpherePoint& p, const SphereForm3& form,
                 const std::array<Vec7, 4>& x, double h) {
    double acc = 0.0;
    double sign = 1.0;
    for (int i = 0; i < 4; ++i) {
        auto slice = [&](double tau) {
            const SpherePoint q(p.p + tau * x[i]);
            std::array<Vec7, 3> rest;
            int out = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                rest[out++] = canonical_extension(x[j], q.p);
            }
            return form(q, rest[0], rest[1], rest[2]);
        };
        acc += sign * fd5_scalar(slice, h);
        sign = -sign;
    }
    return acc;
}

}  // namespace

UpsilonThetaResiduals upsilon_theta_residuals(double theta, Rng& rng,
                                              int tuples, double h) {
    UpsilonThetaResiduals out;
    const double ct = std::cos(theta), st = std::sin(theta);
    SphereForm3 re_part = [theta](const SpherePoint& q, const Vec7& x,
                                  const Vec7& y, const Vec7& z) {
        return upsilon_theta(q, theta, x, y, z).real();
    };
    SphereForm3 im_part = [theta](const SpherePoint& q, const Vec7& x,
                                  const Vec7& y, const Vec7& z) {
        return upsilon_theta(q, theta, x, y, z).imag();
    };
    for (int k = 0; k < tuples; ++k) {
        Vec7 raw{};
        for (double& c : raw.c) c = rng.normal();
        const SpherePoint p(raw);
        const std::array<Vec7, 4> x = {
            random_tangent(p, rng), random_tangent(p, rng),
            random_tangent(p, rng), random_tangent(p, rng)};
        const double omsq = omega_wedge_omega(p, x[0], x[1], x[2], x[3]);
        out.d_re = std::max(
            out.d_re,
            std::abs(sphere_d3(p, re_part, x, h) - 2.0 * st * omsq));
        out.d_im = std::max(
            out.d_im,
            std::abs(sphere_d3(p, im_part, x, h) + 2.0 * ct * omsq));
        const std::complex<double> uth =
            upsilon_theta(p, theta, x[0], x[1], x[2]);
        out.d_omega = std::max(
            out.d_omega,
            std::abs(domega_fd(p, x[0], x[1], x[2], h) -
                     3.0 * kNkLambda * (ct * uth.real() + st * uth.imag())));
    }
    return out;
}

ConePoint random_cone_point(Rng& rng) {
    Vec7 raw{};
    for (double& c : raw.c) c = rng.normal();
    return ConePoint(rng.uniform(0.5, 2.0), SpherePoint(raw));
}

ConeVec random_cone_vec(const ConePoint& cp, Rng& rng) {
    return ConeVec{rng.normal(), random_tangent(cp.m, rng)};
}

}  // namespace nklab
