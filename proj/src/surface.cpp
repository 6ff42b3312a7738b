#include "nklab/surface.hpp"

#include <cmath>

#include "nklab/errors.hpp"
#include "nklab/fd.hpp"

namespace nklab {

namespace {

Vec7 values_of(const V7<Jet2>& jv, double Jet2::*member) {
    Vec7 out;
    for (int i = 0; i < 7; ++i) out[i] = jv.c[i].*member;
    return out;
}

Vec7 fd5_vec(const std::function<Vec7(double)>& f, double h) {
    Vec7 acc = f(2.0 * h) * (-1.0);
    acc += 8.0 * f(h);
    acc -= 8.0 * f(-h);
    acc += f(-2.0 * h);
    return acc * (1.0 / (12.0 * h));
}

}  // namespace

Jet3S SurfacePatch::jets3_fd(double s, double t, double h) const {
    Jet3S out;
    out.usss = fd5_vec([&](double d) { return jets(s + d, t).uss; }, h);
    out.usst = fd5_vec([&](double d) { return jets(s, t + d).uss; }, h);
    out.ustt = fd5_vec([&](double d) { return jets(s + d, t).utt; }, h);
    out.uttt = fd5_vec([&](double d) { return jets(s, t + d).utt; }, h);
    return out;
}

AnalyticPatch::AnalyticPatch(std::string id, std::string description,
                             Domain dom, bool boundary, JetMap map)
    : id_(std::move(id)),
      descr_(std::move(description)),
      dom_(dom),
      boundary_(boundary),
      map_(std::move(map)) {}

Jet2S AnalyticPatch::jets(double s, double t) const {
    const V7<Jet2> jv = map_(Jet2::var_s(s), Jet2::var_t(t));
    Jet2S out;
    out.p = values_of(jv, &Jet2::v);
    out.us = values_of(jv, &Jet2::s);
    out.ut = values_of(jv, &Jet2::t);
    out.uss = values_of(jv, &Jet2::ss);
    out.ust = values_of(jv, &Jet2::st);
    out.utt = values_of(jv, &Jet2::tt);
    return out;
}

FdJetPatch::FdJetPatch(std::string id, Domain dom, bool boundary, PointMap map,
                       double h)
    : id_(std::move(id)),
      dom_(dom),
      boundary_(boundary),
      map_(std::move(map)),
      h_(h) {}

Jet2S FdJetPatch::jets(double s, double t) const {
    Jet2S out;
    out.p = map_(s, t);
    out.us = fd5_vec([&](double d) { return map_(s + d, t); }, h_);
    out.ut = fd5_vec([&](double d) { return map_(s, t + d); }, h_);
    auto d2 = [&](const std::function<Vec7(double)>& f) {
        Vec7 acc = f(h_) + f(-h_) - 2.0 * f(0.0);
        return acc * (1.0 / (h_ * h_));
    };
    out.uss = d2([&](double d) { return map_(s + d, t); });
    out.utt = d2([&](double d) { return map_(s, t + d); });
    // Mixed partial by the 4-point cross stencil.
    Vec7 mixed = map_(s + h_, t + h_) - map_(s + h_, t - h_) -
                 map_(s - h_, t + h_) + map_(s - h_, t - h_);
    out.ust = mixed * (1.0 / (4.0 * h_ * h_));
    return out;
}

double immersion_min_sv(const Jet2S& j) {
    const double E = dot(j.us, j.us), F = dot(j.us, j.ut),
                 G = dot(j.ut, j.ut);
    const double tr = E + G;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - (E * G - F * F)));
    return std::sqrt(std::max(0.0, tr / 2.0 - disc));
}

double sqrt_g(const Jet2S& j) {
    const double E = dot(j.us, j.us), F = dot(j.us, j.ut),
                 G = dot(j.ut, j.ut);
    return std::sqrt(std::max(0.0, E * G - F * F));
}

std::array<Vec7, 2> tangent_frame(const Jet2S& j) {
    const double nus = norm(j.us);
    if (nus < 1e-12) throw DegenerateInputError("u_s vanishes");
    const Vec7 e1 = j.us * (1.0 / nus);
    Vec7 v = j.ut - dot(j.ut, e1) * e1;
    const double nv = norm(v);
    if (nv < 1e-12) throw DegenerateInputError("tangent frame degenerate");
    return {e1, v * (1.0 / nv)};
}

Vec7 project_normal_space(const Jet2S& j, const Vec7& v) {
    const auto tf = tangent_frame(j);
    Vec7 out = v - dot(v, j.p) * j.p;
    out -= dot(out, tf[0]) * tf[0];
    out -= dot(out, tf[1]) * tf[1];
    return out;
}

std::array<double, 2> coordinate_components(const Jet2S& j, const Vec7& X) {
    const double E = dot(j.us, j.us), F = dot(j.us, j.ut),
                 G = dot(j.ut, j.ut);
    const double det = E * G - F * F;
    if (det < 1e-18) throw DegenerateInputError("degenerate first fundamental form");
    const double r1 = dot(X, j.us), r2 = dot(X, j.ut);
    return {(G * r1 - F * r2) / det, (E * r2 - F * r1) / det};
}

double holomorphicity_defect(const Jet2S& j) {
    const auto tf = tangent_frame(j);
    const SpherePoint p(j.p);
    return norm(project_normal_space(j, almost_J(p, tf[0])));
}

double holomorphicity_omega_gap(const Jet2S& j) {
    const auto tf = tangent_frame(j);
    const SpherePoint p(j.p);
    return std::abs(std::abs(omega(p, tf[0], tf[1])) - 1.0);
}

bool is_holomorphic_point(const Jet2S& j, double tol) {
    return holomorphicity_defect(j) <= tol;
}

void validate_patch(const SurfacePatch& patch, int grid_n, double margin,
                    double sphere_tol, double sv_floor) {
    const Domain d = patch.domain();
    for (int i = 0; i < grid_n; ++i)
        for (int k = 0; k < grid_n; ++k) {
            const double fs = (i + 0.5) / grid_n, ft = (k + 0.5) / grid_n;
            const double s =
                d.s0 + margin + (d.s1 - d.s0 - 2 * margin) * fs;
            const double t =
                d.t0 + margin + (d.t1 - d.t0 - 2 * margin) * ft;
            const Jet2S j = patch.jets(s, t);
            if (std::abs(norm(j.p) - 1.0) > sphere_tol)
                throw ModelViolationError("patch " + patch.id() +
                                          " leaves the sphere");
            if (immersion_min_sv(j) <= sv_floor)
                throw DegenerateInputError("patch " + patch.id() +
                                           " fails the immersion floor");
        }
}

Vec7 second_fundamental_form(const Jet2S& j, const Vec7& X, const Vec7& Y) {
    const auto a = coordinate_components(j, X);
    const auto b = coordinate_components(j, Y);
    const Vec7 amb = a[0] * b[0] * j.uss + (a[0] * b[1] + a[1] * b[0]) * j.ust +
                     a[1] * b[1] * j.utt;
    return project_normal_space(j, amb);
}

Vec7 mean_curvature(const Jet2S& j) {
    const auto tf = tangent_frame(j);
    return second_fundamental_form(j, tf[0], tf[0]) +
           second_fundamental_form(j, tf[1], tf[1]);
}

PatchField make_normal_field(const SurfacePatch& patch,
                             std::function<Vec7(const Vec7&)> ambient) {
    const SurfacePatch* pp = &patch;
    return [pp, ambient = std::move(ambient)](double s, double t) {
        const Jet2S j = pp->jets(s, t);
        return project_normal_space(j, ambient(j.p));
    };
}

namespace {

Vec7 field_dir_derivative(const SurfacePatch& patch, double s, double t,
                          const Vec7& X, const PatchField& eta, double h) {
    const Jet2S j = patch.jets(s, t);
    const auto ab = coordinate_components(j, X);
    return fd5_vec(
        [&](double d) { return eta(s + ab[0] * d, t + ab[1] * d); }, h);
}

}  // namespace

Vec7 shape_operator(const SurfacePatch& patch, double s, double t,
                    const Vec7& X, const PatchField& eta, double h) {
    const Jet2S j = patch.jets(s, t);
    const Vec7 de = field_dir_derivative(patch, s, t, X, eta, h);
    const auto tf = tangent_frame(j);
    Vec7 tang = dot(de, tf[0]) * tf[0] + dot(de, tf[1]) * tf[1];
    return -tang;
}

Vec7 normal_connection(const SurfacePatch& patch, double s, double t,
                       const Vec7& X, const PatchField& eta, double h) {
    const Jet2S j = patch.jets(s, t);
    const Vec7 de = field_dir_derivative(patch, s, t, X, eta, h);
    return project_normal_space(j, de);
}

namespace {

AdaptedU2Frame build_adapted(const SurfacePatch& patch, double s, double t,
                             const Vec7& e1, double holo_tol) {
    const Jet2S j = patch.jets(s, t);
    const double defect = holomorphicity_defect(j);
    if (defect > holo_tol)
        throw PreconditionError("tangent plane is not J-invariant (defect " +
                                std::to_string(defect) + ")");
    const SpherePoint p(j.p);
    FrameSU3 fr(p);
    fr.e[0] = e1;
    fr.e[1] = almost_J(p, e1);
    int filled = 2;
    for (int cand = 0; cand < 7 && filled < 6; ++cand) {
        Vec7 v = project_tangent(p, basis_vec(cand));
        for (int k = 0; k < filled; ++k) v -= dot(v, fr.e[k]) * fr.e[k];
        if (norm(v) < 0.3) continue;
        fr.e[filled] = normalized(v);
        fr.e[filled + 1] = almost_J(p, fr.e[filled]);
        filled += 2;
    }
    if (filled < 6)
        throw FrameError("adapted frame construction ran out of candidates");
    const std::complex<double> val = upsilon_on_frame(fr);
    if (std::abs(val) < 1e-8)
        throw FrameError("degenerate Upsilon value during phase fixing");
    const double psi = -std::arg(val);
    const Vec7 e5 = fr.e[4], e6 = fr.e[5];
    fr.e[4] = std::cos(psi) * e5 + std::sin(psi) * e6;
    fr.e[5] = almost_J(p, fr.e[4]);
    AdaptedU2Frame out(fr);
    out.s = s;
    out.t = t;
    return out;
}

}  // namespace

AdaptedU2Frame adapt_u2_frame(const SurfacePatch& patch, double s, double t,
                              double holo_tol) {
    const Jet2S j = patch.jets(s, t);
    return build_adapted(patch, s, t, tangent_frame(j)[0], holo_tol);
}

AdaptedU2Frame adapt_u2_frame_rotated(const SurfacePatch& patch, double s,
                                      double t, double theta, double holo_tol) {
    const Jet2S j = patch.jets(s, t);
    const auto tf = tangent_frame(j);
    const SpherePoint p(j.p);
    const Vec7 e1 = std::cos(theta) * tf[0] +
                    std::sin(theta) * almost_J(p, tf[0]);
    return build_adapted(patch, s, t, e1, holo_tol);
}

AdaptedU2Frame adapt_u2_frame_along(const SurfacePatch& patch, double s,
                                    double t, const Vec7& e1_dir,
                                    double holo_tol) {
    const Jet2S j = patch.jets(s, t);
    Vec7 e1 = e1_dir - dot(e1_dir, j.p) * j.p;
    const double n = norm(e1);
    if (n < 1e-8) throw DegenerateInputError("frame direction degenerate");
    return build_adapted(patch, s, t, e1 * (1.0 / n), holo_tol);
}

HopfCoefficients hopf_coefficients(const SurfacePatch& patch,
                                   const AdaptedU2Frame& fr, double tol) {
    const Jet2S j = patch.jets(fr.s, fr.t);
    const auto& e = fr.frame.e;
    const Vec7 II11 = second_fundamental_form(j, e[0], e[0]);
    const Vec7 II12 = second_fundamental_form(j, e[0], e[1]);
    // II(e1,e1) = k1 e3 + k2 e4 + m1 e5 - m2 e6
    const std::complex<double> kappa_a(dot(II11, e[2]), dot(II11, e[3]));
    const std::complex<double> mu_a(dot(II11, e[4]), -dot(II11, e[5]));
    // II(e1,e2) = -k2 e3 + k1 e4 + m2 e5 + m1 e6
    const std::complex<double> kappa_b(dot(II12, e[3]), -dot(II12, e[2]));
    const std::complex<double> mu_b(dot(II12, e[5]), dot(II12, e[4]));
    HopfCoefficients out;
    out.kappa = 0.5 * (kappa_a + kappa_b);
    out.mu = 0.5 * (mu_a + mu_b);
    out.consistency =
        std::max(std::abs(kappa_a - kappa_b), std::abs(mu_a - mu_b));
    if (out.consistency > tol)
        throw ModelViolationError(
            "Hopf readings disagree (non-holomorphic or non-minimal input): " +
            std::to_string(out.consistency));
    return out;
}

double hopf_magnitude(const HopfCoefficients& h) {
    return std::sqrt(std::norm(h.kappa) + std::norm(h.mu));
}

BoundaryOrthoResult boundary_orthogonality(const SurfacePatch& patch,
                                           const GeodesicBall& ball, double s,
                                           int umbilic_dirs) {
    if (!patch.has_boundary())
        throw PreconditionError("patch has no boundary edge");
    const Domain d = patch.domain();
    const Jet2S j = patch.jets(s, d.t0);
    BoundaryOrthoResult out;
    const double cr = std::cos(ball.radius), sr = std::sin(ball.radius);
    out.on_sphere_residual = std::abs(dot(j.p, ball.center.p) - cr);
    if (out.on_sphere_residual > 1e-8)
        throw PreconditionError(
            "boundary point is not on the geodesic sphere (residual " +
            std::to_string(out.on_sphere_residual) + ")");
    // Unit normal of the geodesic sphere S = dB(center, radius) inside T S^6.
    auto nu_S = [&](const Vec7& q) {
        return (cr * q - ball.center.p) * (1.0 / sr);
    };
    const Vec7 nu = nu_S(j.p);
    out.angle_defect = std::asin(
        std::min(1.0, norm(project_normal_space(j, nu))));
    // Umbilicity of S at this point: A(X) compared against cot(radius) X, with
    // A from finite differences of nu_S along curves inside S.
    const Vec7 y = (j.p - cr * ball.center.p) * (1.0 / sr);
    const SpherePoint q(j.p);
    double worst = 0.0;
    for (int k = 0; k < umbilic_dirs; ++k) {
        // Deterministic tangent directions of S at q.
        Vec7 w = basis_vec(k % 7);
        w -= dot(w, ball.center.p) * ball.center.p;
        w -= dot(w, y) * y;
        if (norm(w) < 0.3) continue;
        w = normalized(w);
        auto curve = [&](double tau) {
            return cr * ball.center.p +
                   sr * (std::cos(tau) * y + std::sin(tau) * w);
        };
        const Vec7 X = sr * w;  // velocity of the curve at tau = 0
        const Vec7 dnu = fd5_vec(
            [&](double tau) { return nu_S(curve(tau)); }, 1e-3);
        Vec7 A = project_tangent(q, dnu);
        A -= dot(A, nu) * nu;  // tangential to S
        const double c = cr / sr;
        worst = std::max(worst, norm(A - c * X));
    }
    out.umbilicity_residual = worst;
    return out;
}

RigidityReport rigidity_probe(const SurfacePatch& patch,
                              const GeodesicBall& ball, int nsamples,
                              double tol) {
    if (!patch.has_boundary())
        throw PreconditionError("patch has no boundary edge");
    const Domain d = patch.domain();
    RigidityReport rep;
    for (int k = 0; k < nsamples; ++k) {
        const double s = d.s0 + (d.s1 - d.s0) * (k + 0.5) / nsamples;
        const auto ortho = boundary_orthogonality(patch, ball, s);
        rep.max_angle_defect = std::max(rep.max_angle_defect,
                                        ortho.angle_defect);
        const Jet2S j = patch.jets(s, d.t0);
        const double defect = holomorphicity_defect(j);
        rep.max_holo_defect = std::max(rep.max_holo_defect, defect);
        if (defect > tol) {
            rep.flagged = true;
            rep.reason = "holomorphicity defect above tolerance at boundary";
            continue;  // adapted frame (and Phi) undefined here
        }
        // Conormal-first adapted frame: e1 = outer conormal (= -unit u_t
        // component orthogonal to the boundary tangent).
        const auto tf = tangent_frame(j);
        Vec7 conormal = j.ut - dot(j.ut, tf[0]) * tf[0];
        conormal = -1.0 * normalized(conormal);
        const auto fr = adapt_u2_frame_along(patch, s, d.t0, conormal, tol);
        const Vec7 II12 =
            second_fundamental_form(j, fr.frame.e[0], fr.frame.e[1]);
        rep.max_II12 = std::max(rep.max_II12, norm(II12));
        const auto hopf = hopf_coefficients(patch, fr, 1e6);  // read, no throw
        rep.max_phi = std::max(rep.max_phi, hopf_magnitude(hopf));
    }
    if (rep.max_angle_defect > tol) {
        rep.flagged = true;
        rep.reason = rep.reason.empty()
                         ? "boundary does not meet the sphere orthogonally"
                         : rep.reason + "; non-orthogonal boundary";
    }
    if (!rep.flagged && (rep.max_II12 > tol || rep.max_phi > tol)) {
        rep.flagged = true;
        rep.reason = "boundary II or Hopf magnitude above tolerance";
    }
    return rep;
}

}  // namespace nklab
