#include "nklab/variation.hpp"

#include <algorithm>
#include <cmath>

#include "nklab/errors.hpp"
#include "nklab/octonion.hpp"
#include "nklab/quadrature.hpp"

namespace nklab {

namespace {

template <class F>
Vec7 fd5_vec(F&& f, double h) {
    return (1.0 / (12.0 * h)) *
           (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h));
}

template <class F>
double fd5_scalar(F&& f, double h) {
    return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

template <class F>
Vec7 fd5_second_vec(F&& f, double h) {
    return (1.0 / (12.0 * h * h)) *
           (-1.0 * f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) -
            f(2.0 * h));
}

Vec7 normal_part(const Jet2S& j, const Vec7& v) {
    return project_normal_space(j, v);
}

/// Derivative of the field along the parameter curve through (s,t) with
/// velocity a d/ds + b d/dt, projected onto the normal space at (s,t).
Vec7 nabla_perp_coords(const SurfacePatch& patch, const Jet2S& j, double s,
                       double t, double a, double b, const PatchField& field,
                       double h) {
    const Vec7 deriv = fd5_vec(
        [&](double tau) { return field(s + a * tau, t + b * tau); }, h);
    return normal_part(j, deriv);
}

double stable_sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double smoother_step(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

/// Sign aligning the Gram-Schmidt frame orientation with (e1, J e1).
double frame_orientation(const Jet2S& j) {
    const auto tf = tangent_frame(j);
    const SpherePoint p(j.p);
    const double c = dot(tf[1], almost_J(p, tf[0]));
    if (std::abs(c) < 0.5) {
        throw FrameError(
            "tangent plane is far from J-invariant; oriented comparison with "
            "(e1, J e1) is meaningless here");
    }
    return c > 0.0 ? 1.0 : -1.0;
}

}  // namespace

Vec7 eval_field(const SurfacePatch& patch, const NormalField& field, double s,
                double t) {
    const Jet2S j = patch.jets(s, t);
    return normal_part(j, field.ambient(j.p));
}

PatchField as_patch_field(const SurfacePatch& patch, const NormalField& field) {
    const SurfacePatch* pp = &patch;
    NormalField copy = field;
    return [pp, copy](double s, double t) {
        return eval_field(*pp, copy, s, t);
    };
}

Vec7 nabla_perp(const SurfacePatch& patch, double s, double t, const Vec7& x,
                const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const auto ab = coordinate_components(j, x);
    return nabla_perp_coords(patch, j, s, t, ab[0], ab[1], field, h);
}

PerpDerivs nabla_perp_frame(const SurfacePatch& patch, double s, double t,
                            const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 e1 = (1.0 / norm(j.us)) * j.us;
    const Vec7 e2 = almost_J(p, e1);
    const auto a1 = coordinate_components(j, e1);
    const auto a2 = coordinate_components(j, e2);
    return PerpDerivs{
        nabla_perp_coords(patch, j, s, t, a1[0], a1[1], field, h),
        nabla_perp_coords(patch, j, s, t, a2[0], a2[1], field, h)};
}

Vec7 dirac_D(const SurfacePatch& patch, double s, double t, const Vec7& x,
             const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 jx = almost_J(p, x);
    const auto ax = coordinate_components(j, x);
    const auto ajx = coordinate_components(j, jx);
    const Vec7 nx = nabla_perp_coords(patch, j, s, t, ax[0], ax[1], field, h);
    const Vec7 njx = nabla_perp_coords(patch, j, s, t, ajx[0], ajx[1], field, h);
    return nx + almost_J(p, njx);
}

DFrame dirac_D_frame(const SurfacePatch& patch, double s, double t,
                     const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const PerpDerivs nd = nabla_perp_frame(patch, s, t, field, h);
    // D_{e1} = n1 + J n2, D_{e2} = n2 - J n1 (since J e2 = -e1)
    return DFrame{nd.d1 + almost_J(p, nd.d2), nd.d2 - almost_J(p, nd.d1)};
}

double alpha_form(const SurfacePatch& patch, double s, double t, const Vec7& x,
                  const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 eta = field(s, t);
    const Vec7 nab = nabla_perp(patch, s, t, x, field, h);
    return dot(nab, almost_J(p, eta));
}

namespace {

/// alpha evaluated on a coordinate vector field (d/ds for dir 0, d/dt for 1).
double alpha_coord(const SurfacePatch& patch, double s, double t, int dir,
                   const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const double a = dir == 0 ? 1.0 : 0.0;
    const double b = dir == 0 ? 0.0 : 1.0;
    const Vec7 nab = nabla_perp_coords(patch, j, s, t, a, b, field, h);
    return dot(nab, almost_J(p, field(s, t)));
}

}  // namespace

double dalpha_frame(const SurfacePatch& patch, double s, double t,
                    const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const double ds_of_at = fd5_scalar(
        [&](double u) { return alpha_coord(patch, s + u, t, 1, field, h); }, h);
    const double dt_of_as = fd5_scalar(
        [&](double u) { return alpha_coord(patch, s, t + u, 0, field, h); }, h);
    return frame_orientation(j) * (ds_of_at - dt_of_as) / sqrt_g(j);
}

double rperp_frame(const SurfacePatch& patch, double s, double t,
                   const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    auto inner = [&](int dir, double ss, double tt) {
        const Jet2S jc = patch.jets(ss, tt);
        const double a = dir == 0 ? 1.0 : 0.0;
        const double b = dir == 0 ? 0.0 : 1.0;
        return nabla_perp_coords(patch, jc, ss, tt, a, b, field, h);
    };
    const Vec7 ds_nt =
        fd5_vec([&](double u) { return inner(1, s + u, t); }, h);
    const Vec7 dt_ns =
        fd5_vec([&](double u) { return inner(0, s, t + u); }, h);
    const Vec7 rp = normal_part(j, ds_nt) - normal_part(j, dt_ns);
    const Vec7 eta = field(s, t);
    return frame_orientation(j) * dot(rp, almost_J(p, eta)) / sqrt_g(j);
}

double curvature_exchange_residual(const SurfacePatch& patch, double s, double t,
                        const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 eta = field(s, t);
    const Vec7 e1 = (1.0 / norm(j.us)) * j.us;
    const Vec7 e2 = almost_J(p, e1);
    double shape2 = 0.0;
    const std::array<Vec7, 2> frame = {e1, e2};
    for (const Vec7& a : frame) {
        for (const Vec7& b : frame) {
            const double c = dot(second_fundamental_form(j, a, b), eta);
            shape2 += c * c;
        }
    }
    double curv = 0.0;
    for (const Vec7& a : frame) curv += riemann_closed(eta, a, a, eta);
    const double rp = rperp_frame(patch, s, t, field, h);
    const double mass = 2.0 * kNkLambda * kNkLambda * norm2(eta);
    return std::abs(shape2 + curv + rp - mass);
}

double bochner_identity_residual(const SurfacePatch& patch, double s, double t,
                        const PatchField& field, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 eta = field(s, t);
    const PerpDerivs nd = nabla_perp_frame(patch, s, t, field, h);
    const DFrame df = dirac_D_frame(patch, s, t, field, h);
    const double grad2 = norm2(nd.d1) + norm2(nd.d2);
    const double half_d = 0.5 * (norm2(df.d1) + norm2(df.d2));
    const Vec7 e1 = (1.0 / norm(j.us)) * j.us;
    const double torsion =
        dot(torsion_P(p, e1, almost_J(p, eta)), df.d1);
    const double rp = rperp_frame(patch, s, t, field, h);
    const double da = dalpha_frame(patch, s, t, field, h);
    return std::abs(grad2 + rp - half_d - torsion - da);
}

BoundaryFrameData boundary_frame(const SurfacePatch& patch, double s) {
    if (!patch.has_boundary()) {
        throw PreconditionError("patch has no boundary edge");
    }
    const Domain d = patch.domain();
    const Jet2S j = patch.jets(s, d.t0);
    const SpherePoint p(j.p);
    const Vec7 tvec = (1.0 / norm(j.us)) * j.us;
    Vec7 con = j.ut - dot(j.ut, tvec) * tvec;
    const double n = norm(con);
    if (n < 1e-10) throw DegenerateInputError("degenerate boundary conormal");
    con = (-1.0 / n) * con;
    const double jt = norm(almost_J(p, tvec) + con);
    return BoundaryFrameData{j.p, tvec, con, jt};
}

double boundary_tangency_residual(const SurfacePatch& patch,
                                  const LagrangianPatch& lag,
                                  const NormalField& field, int samples) {
    const Domain d = patch.domain();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s =
            d.s0 + (d.s1 - d.s0) * (k + 0.5) / static_cast<double>(samples);
        const Jet2S j = patch.jets(s, d.t0);
        if (!lag.contains(j.p, 1e-8)) {
            throw PreconditionError(
                "boundary point is not on the Lagrangian; admissibility is "
                "undefined for this pair");
        }
        const Vec7 eta = normal_part(j, field.ambient(j.p));
        worst = std::max(worst, lag.tangent_distance(j.p, eta));
    }
    return worst;
}

Family exp_family(const SurfacePatch& patch, const NormalField& field) {
    const SurfacePatch* pp = &patch;
    NormalField copy = field;
    auto map = [pp, copy](double s, double t, double eps) {
        const Jet2S j = pp->jets(s, t);
        const Vec7 eta = project_normal_space(j, copy.ambient(j.p));
        const double n = norm(eta);
        const double x = eps * n;
        return std::cos(x) * j.p + (eps * stable_sinc(x)) * eta;
    };
    return Family{"exp:" + field.name, map};
}

Family l_projected_family(const SurfacePatch& patch, const LagrangianPatch& lag,
                          const NormalField& field) {
    const Family base = exp_family(patch, field);
    const Domain d = patch.domain();
    const double width = std::min(0.5, 0.5 * (d.t1 - d.t0));
    const LagrangianPatch lcopy = lag;
    const double t0 = d.t0;
    auto map = [base, lcopy, t0, width](double s, double t, double eps) {
        const Vec7 f = base.map(s, t, eps);
        const double chi = 1.0 - smoother_step((t - t0) / width);
        if (chi == 0.0) return f;
        const Vec7 fb = base.map(s, t0, eps);
        const Vec7 corr = lcopy.closest_point(fb) - fb;
        const Vec7 blended = f + chi * corr;
        const double n = norm(blended);
        if (n < 0.5) throw DegenerateInputError("projected family collapsed");
        return (1.0 / n) * blended;
    };
    return Family{"lproj:" + field.name, map};
}

double boundary_compatibility_residual(const SurfacePatch& patch, const Family& family,
                        const PatchField& field, double s, double h,
                        double eps) {
    const BoundaryFrameData bf = boundary_frame(patch, s);
    const Domain d = patch.domain();
    const Vec7 acc = fd5_second_vec(
        [&](double e) { return family.map(s, d.t0, e); }, eps);
    const double alpha_t = alpha_form(patch, s, d.t0, bf.tangent, field, h);
    return std::abs(dot(acc, bf.conormal) + alpha_t);
}

double area(const SurfacePatch& patch, std::size_t nodes) {
    const Domain d = patch.domain();
    const Grid2D grid(nodes, nodes, d.s0, d.s1, d.t0, d.t1);
    return integrate(grid, [&](double s, double t) {
        return sqrt_g(patch.jets(s, t));
    });
}

double area_checked(const SurfacePatch& patch, std::size_t nodes,
                    double rel_tol) {
    const double coarse = area(patch, nodes);
    const double fine = area(patch, 2 * nodes);
    const double scale = std::max(1.0, std::abs(fine));
    if (std::abs(fine - coarse) > rel_tol * scale) {
        throw AccuracyError("area quadrature failed its refinement check");
    }
    return fine;
}

double family_area(const SurfacePatch& domain_ref, const Family& family,
                   double eps, std::size_t nodes) {
    const Domain d = domain_ref.domain();
    const Grid2D grid(nodes, nodes, d.s0, d.s1, d.t0, d.t1);
    const double h = 1e-4;
    return integrate(grid, [&](double s, double t) {
        const Vec7 fs = fd5_vec(
            [&](double u) { return family.map(s + u, t, eps); }, h);
        const Vec7 ft = fd5_vec(
            [&](double u) { return family.map(s, t + u, eps); }, h);
        const double e = dot(fs, fs), f = dot(fs, ft), g = dot(ft, ft);
        const double det = e * g - f * f;
        if (det <= 0.0) return 0.0;
        return std::sqrt(det);
    });
}

double area_second_difference(const SurfacePatch& patch, const Family& family,
                              std::size_t nodes, double eps) {
    const double ap = family_area(patch, family, eps, nodes);
    const double a0 = family_area(patch, family, 0.0, nodes);
    const double am = family_area(patch, family, -eps, nodes);
    return (ap - 2.0 * a0 + am) / (eps * eps);
}

namespace {

void require_minimal(const SurfacePatch& patch, double tol) {
    const Domain d = patch.domain();
    const double ms = 1e-3 * (d.s1 - d.s0);
    const double mt = 1e-3 * (d.t1 - d.t0);
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
            const double s = d.s0 + ms + (d.s1 - d.s0 - 2 * ms) * i / 4.0;
            const double t = d.t0 + mt + (d.t1 - d.t0 - 2 * mt) * k / 4.0;
            if (norm(mean_curvature(patch.jets(s, t))) > tol) {
                throw PreconditionError(
                    "second variation of area requires a minimal base surface");
            }
        }
    }
}

}  // namespace

GeneralSecondVariation second_variation_general(const SurfacePatch& patch,
                                                const NormalField& field,
                                                const Family& family,
                                                std::size_t nodes,
                                                std::size_t boundary_nodes,
                                                double h, double eps) {
    require_minimal(patch, 1e-5);
    const PatchField pf = as_patch_field(patch, field);
    const Domain d = patch.domain();
    const Grid2D grid(nodes, nodes, d.s0, d.s1, d.t0, d.t1);

    KahanSum grad_sum, shape_sum, curv_sum;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid.node_s(k), t = grid.node_t(k), w = grid.weight(k);
        const Jet2S j = patch.jets(s, t);
        const double dA = sqrt_g(j) * w;
        const Vec7 eta = pf(s, t);
        const auto tf = tangent_frame(j);
        const auto a1 = coordinate_components(j, tf[0]);
        const auto a2 = coordinate_components(j, tf[1]);
        const Vec7 n1 = nabla_perp_coords(patch, j, s, t, a1[0], a1[1], pf, h);
        const Vec7 n2 = nabla_perp_coords(patch, j, s, t, a2[0], a2[1], pf, h);
        grad_sum.add((norm2(n1) + norm2(n2)) * dA);
        double shape2 = 0.0;
        for (const Vec7& a : tf) {
            for (const Vec7& b : tf) {
                const double c = dot(second_fundamental_form(j, a, b), eta);
                shape2 += c * c;
            }
        }
        shape_sum.add(shape2 * dA);
        double curv = 0.0;
        for (const Vec7& a : tf) curv += riemann_closed(eta, a, a, eta);
        curv_sum.add(curv * dA);
    }

    double boundary = 0.0;
    if (patch.has_boundary()) {
        boundary = integrate_1d(boundary_nodes, d.s0, d.s1, [&](double s) {
            const Jet2S j = patch.jets(s, d.t0);
            const BoundaryFrameData bf = boundary_frame(patch, s);
            const Vec7 acc = fd5_second_vec(
                [&](double e) { return family.map(s, d.t0, e); }, eps);
            return dot(acc, bf.conormal) * norm(j.us);
        });
    }

    GeneralSecondVariation out;
    out.gradient = grad_sum.value();
    out.shape = shape_sum.value();
    out.curvature = curv_sum.value();
    out.boundary = boundary;
    out.value = out.gradient - out.shape - out.curvature + out.boundary;
    return out;
}

double nk_integrand(const SurfacePatch& patch, double s, double t,
                    const PatchField& field, const Vec7& e, double h) {
    const Jet2S j = patch.jets(s, t);
    const SpherePoint p(j.p);
    const Vec7 eta = field(s, t);
    const Vec7 je = almost_J(p, e);
    const auto ae = coordinate_components(j, e);
    const auto aje = coordinate_components(j, je);
    const Vec7 ne = nabla_perp_coords(patch, j, s, t, ae[0], ae[1], field, h);
    const Vec7 nje = nabla_perp_coords(patch, j, s, t, aje[0], aje[1], field, h);
    const Vec7 d_e = ne + almost_J(p, nje);    // D along e
    const Vec7 d_je = nje - almost_J(p, ne);   // D along J e
    const double half_d = 0.5 * (norm2(d_e) + norm2(d_je));
    const double torsion = dot(torsion_P(p, e, almost_J(p, eta)), d_e);
    const double mass = 2.0 * kNkLambda * kNkLambda * norm2(eta);
    return half_d + torsion - mass;
}

NkSecondVariation second_variation_nk(const SurfacePatch& patch,
                                      const NormalField& field,
                                      std::size_t nodes, double h) {
    require_minimal(patch, 1e-5);
    const PatchField pf = as_patch_field(patch, field);
    const Domain d = patch.domain();
    const Grid2D grid(nodes, nodes, d.s0, d.s1, d.t0, d.t1);
    KahanSum half_sum, tor_sum, mass_sum;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid.node_s(k), t = grid.node_t(k), w = grid.weight(k);
        const Jet2S j = patch.jets(s, t);
        if (holomorphicity_defect(j) > 1e-6) {
            throw PreconditionError(
                "boundary-free second variation requires a holomorphic patch");
        }
        const double dA = sqrt_g(j) * w;
        const SpherePoint p(j.p);
        const Vec7 eta = pf(s, t);
        const Vec7 e1 = (1.0 / norm(j.us)) * j.us;
        const PerpDerivs nd = nabla_perp_frame(patch, s, t, pf, h);
        const Vec7 d1 = nd.d1 + almost_J(p, nd.d2);
        const Vec7 d2 = nd.d2 - almost_J(p, nd.d1);
        half_sum.add(0.5 * (norm2(d1) + norm2(d2)) * dA);
        tor_sum.add(dot(torsion_P(p, e1, almost_J(p, eta)), d1) * dA);
        mass_sum.add(2.0 * kNkLambda * kNkLambda * norm2(eta) * dA);
    }
    NkSecondVariation out;
    out.half_d = half_sum.value();
    out.torsion = tor_sum.value();
    out.mass = mass_sum.value();
    out.value = out.half_d + out.torsion - out.mass;
    return out;
}

StokesCheck alpha_stokes(const SurfacePatch& patch, const NormalField& field,
                         std::size_t nodes, std::size_t boundary_nodes,
                         double h) {
    const PatchField pf = as_patch_field(patch, field);
    const Domain d = patch.domain();
    const Grid2D grid(nodes, nodes, d.s0, d.s1, d.t0, d.t1);
    KahanSum interior;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid.node_s(k), t = grid.node_t(k), w = grid.weight(k);
        const Jet2S j = patch.jets(s, t);
        interior.add(dalpha_frame(patch, s, t, pf, h) * sqrt_g(j) * w);
    }
    double boundary = 0.0;
    if (patch.has_boundary()) {
        // The interior integrand carries the complex orientation through
        // frame_orientation, so the induced boundary direction at the t0 edge
        // is that same sign times +d/ds.
        const double orient =
            frame_orientation(patch.jets(0.5 * (d.s0 + d.s1), d.t0));
        boundary =
            orient * integrate_1d(boundary_nodes, d.s0, d.s1, [&](double s) {
                const Jet2S j = patch.jets(s, d.t0);
                const BoundaryFrameData bf = boundary_frame(patch, s);
                return alpha_form(patch, s, d.t0, bf.tangent, pf, h) *
                       norm(j.us);
            });
    }
    return StokesCheck{interior.value(), boundary};
}

std::vector<NormalField> admissible_basis(const LagrangianPatch& lag) {
    const auto& ax = lag.axes();
    std::vector<int> full = {ax[2], ax[3]};
    std::vector<int> damped;
    for (int a = 3; a < 7; ++a) {
        if (a != ax[2] && a != ax[3]) damped.push_back(a);
    }
    const std::array<std::pair<std::string, int>, 4> harmonics = {
        std::pair<std::string, int>{"", -1},
        {"p1*", 0},
        {"p2*", 1},
        {"p3*", 2}};
    std::vector<NormalField> out;
    auto harmonic_value = [](int idx, const Vec7& q) {
        return idx < 0 ? 1.0 : q.c[idx];
    };
    for (int leg : full) {
        for (const auto& [hname, hidx] : harmonics) {
            NormalField f;
            f.name = hname + "e" + std::to_string(leg + 1);
            f.ambient = [leg, hidx, harmonic_value](const Vec7& q) {
                return harmonic_value(hidx, q) * basis_vec(leg);
            };
            out.push_back(std::move(f));
        }
    }
    for (int leg : damped) {
        for (const auto& [hname, hidx] : harmonics) {
            NormalField f;
            f.name = "p3*" + hname + "e" + std::to_string(leg + 1);
            f.ambient = [leg, hidx, harmonic_value](const Vec7& q) {
                return q.c[2] * harmonic_value(hidx, q) * basis_vec(leg);
            };
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace nklab
