#include "nklab/sphere.hpp"

#include <cmath>

#include "nklab/errors.hpp"
#include "nklab/fd.hpp"

namespace nklab {

SpherePoint::SpherePoint(const Vec7& v) {
    const double n = norm(v);
    if (n < 1e-12) throw DegenerateInputError("cannot normalize ~zero vector");
    p = v * (1.0 / n);
}

Vec7 project_tangent(const SpherePoint& p, const Vec7& v) {
    return v - dot(v, p.p) * p.p;
}

Vec7 almost_J(const SpherePoint& p, const Vec7& x) { return cross(p.p, x); }

double omega(const SpherePoint& p, const Vec7& x, const Vec7& y) {
    return dot(cross(p.p, x), y);
}

std::complex<double> upsilon(const SpherePoint& p, const Vec7& x,
                             const Vec7& y, const Vec7& z) {
    return {star_phi0()(p.p, x, y, z), phi0()(x, y, z)};
}

std::complex<double> upsilon_c(const SpherePoint& p,
                               const std::pair<Vec7, Vec7>& x,
                               const std::pair<Vec7, Vec7>& y,
                               const std::pair<Vec7, Vec7>& z) {
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> acc = 0.0;
    const Vec7* xs[2] = {&x.first, &x.second};
    const Vec7* ys[2] = {&y.first, &y.second};
    const Vec7* zs[2] = {&z.first, &z.second};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                std::complex<double> factor = 1.0;
                if (a) factor *= I;
                if (b) factor *= I;
                if (c) factor *= I;
                acc += factor * upsilon(p, *xs[a], *ys[b], *zs[c]);
            }
    return acc;
}

FrameSU3 su3_frame(const SpherePoint& p) {
    FrameSU3 fr(p);
    int filled = 0;
    for (int cand = 0; cand < 7 && filled < 6; ++cand) {
        Vec7 v = project_tangent(p, basis_vec(cand));
        for (int k = 0; k < filled; ++k) v -= dot(v, fr.e[k]) * fr.e[k];
        if (norm(v) < 0.3) continue;  // deterministic candidate threshold
        fr.e[filled] = normalized(v);
        fr.e[filled + 1] = almost_J(p, fr.e[filled]);
        filled += 2;
    }
    if (filled < 6) throw FrameError("SU(3)-frame construction ran out of candidates");
    // Rotate the last complex leg so Upsilon(f1,f2,f3) = 1.
    const std::complex<double> val = upsilon_on_frame(fr);
    if (std::abs(val) < 1e-8)
        throw FrameError("degenerate Upsilon value during phase fixing");
    const double psi = -std::arg(val);
    const Vec7 e5 = fr.e[4], e6 = fr.e[5];
    fr.e[4] = std::cos(psi) * e5 + std::sin(psi) * e6;
    fr.e[5] = almost_J(p, fr.e[4]);
    return fr;
}

std::complex<double> upsilon_on_frame(const FrameSU3& fr) {
    auto f = [&](int k) {
        return std::pair<Vec7, Vec7>{0.5 * fr.e[2 * k],
                                     -0.5 * fr.e[2 * k + 1]};
    };
    return upsilon_c(fr.base, f(0), f(1), f(2));
}

std::complex<double> upsilon_wedge_conj(const FrameSU3& fr) {
    // Shuffle sum over 3-element subsets S of {0..5}: sign(S, S^c)
    // Upsilon(e_S) conj(Upsilon)(e_{S^c}).
    std::complex<double> acc = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) {
                int comp[3], n = 0;
                for (int m = 0; m < 6; ++m)
                    if (m != i && m != j && m != k) comp[n++] = m;
                int perm[6] = {i, j, k, comp[0], comp[1], comp[2]};
                int sign = 1;
                for (int a = 0; a < 6; ++a)
                    for (int b = a + 1; b < 6; ++b)
                        if (perm[a] > perm[b]) sign = -sign;
                const auto u = upsilon(fr.base, fr.e[i], fr.e[j], fr.e[k]);
                const auto v = upsilon(fr.base, fr.e[comp[0]], fr.e[comp[1]],
                                       fr.e[comp[2]]);
                acc += double(sign) * u * std::conj(v);
            }
    return acc;
}

Vec7 canonical_extension(const Vec7& y, const Vec7& q) {
    return y - dot(y, q) * q;
}

namespace {

Vec7 sphere_path(const Vec7& p, const Vec7& X, double tau) {
    Vec7 q = p + tau * X;
    return q * (1.0 / norm(q));
}

Vec7 fd5_vec(const std::function<Vec7(double)>& f, double h) {
    Vec7 acc = f(2.0 * h) * (-1.0);
    acc += 8.0 * f(h);
    acc -= 8.0 * f(-h);
    acc += f(-2.0 * h);
    return acc * (1.0 / (12.0 * h));
}

}  // namespace

Vec7 levi_civita(const Curve& c, const VecField& V, double t, double h) {
    const SpherePoint base(c(t));
    const Vec7 dV = fd5_vec([&](double d) { return V(t + d); }, h);
    return project_tangent(base, dV);
}

Vec7 torsion_P(const SpherePoint& p, const Vec7& X, const Vec7& Y) {
    return project_tangent(p, cross(X, Y));
}

Vec7 torsion_P_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                  double h) {
    auto c = [&](double tau) { return sphere_path(p.p, X, tau); };
    auto Yt = [&](double tau) { return canonical_extension(Y, c(tau)); };
    auto JYt = [&](double tau) {
        const Vec7 q = c(tau);
        return cross(q, canonical_extension(Y, q));
    };
    const Vec7 a = levi_civita(c, JYt, 0.0, h);
    const Vec7 b = levi_civita(c, Yt, 0.0, h);
    return a - almost_J(p, b);
}

Vec7 nk_connection(const Curve& c, const VecField& V, double t, double h) {
    const SpherePoint base(c(t));
    const Vec7 cdot = fd5_vec([&](double d) { return c(t + d); }, h);
    const Vec7 lc = levi_civita(c, V, t, h);
    const Vec7 JV = almost_J(base, V(t));
    return lc + 0.5 * torsion_P(base, project_tangent(base, cdot), JV);
}

double riemann_closed(const Vec7& X, const Vec7& Y, const Vec7& Z,
                      const Vec7& W) {
    return dot(X, W) * dot(Y, Z) - dot(X, Z) * dot(Y, W);
}

double riemann_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                  const Vec7& Z, const Vec7& W, double h) {
    // nabla_Ytilde Ztilde is the closed-form field G_Y(q) = -<Z,q> Ytilde(q);
    // differentiate it along X and antisymmetrize.  Brackets of canonical
    // extensions are radial at p, so the [X,Y] term projects to zero.
    auto G = [&](const Vec7& dir, const Vec7& q) {
        return -dot(Z, q) * canonical_extension(dir, q);
    };
    auto dcov = [&](const Vec7& along, const Vec7& inner) {
        auto c = [&](double tau) { return sphere_path(p.p, along, tau); };
        const Vec7 d = fd5_vec(
            [&](double tau) {
                const Vec7 q = c(tau);
                return G(canonical_extension(inner, q), q);
            },
            h);
        return project_tangent(p, d);
    };
    const Vec7 xy = dcov(X, Y);
    const Vec7 yx = dcov(Y, X);
    return dot(xy - yx, W);
}

double curvature_identity_residual(const SpherePoint& p, const Vec7& X,
                                   const Vec7& Y) {
    const Vec7 JX = almost_J(p, X), JY = almost_J(p, Y);
    const double lhs = riemann_closed(X, Y, Y, X) +
                       riemann_closed(X, JY, JY, X) +
                       riemann_closed(X, JX, Y, JY);
    const double rhs =
        2.0 * kNkLambda * kNkLambda * norm2(torsion_P(p, X, Y));
    return std::abs(lhs - rhs);
}

double omega_wedge_omega(const SpherePoint& p, const Vec7& v1, const Vec7& v2,
                         const Vec7& v3, const Vec7& v4) {
    auto om = [&](const Vec7& a, const Vec7& b) { return omega(p, a, b); };
    return 2.0 * (om(v1, v2) * om(v3, v4) - om(v1, v3) * om(v2, v4) +
                  om(v1, v4) * om(v2, v3));
}

namespace {

/// Directional derivative at p along X of tau -> f(point on sphere path).
double dir_deriv(const Vec7& p, const Vec7& X,
                 const std::function<double(const Vec7&)>& f, double h) {
    return fd::d1_central5([&](double tau) { return f(sphere_path(p, X, tau)); },
                           0.0, h);
}

}  // namespace

double domega_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                 const Vec7& Z, double h) {
    auto term = [&](const Vec7& along, const Vec7& a, const Vec7& b) {
        return dir_deriv(p.p, along,
                         [&](const Vec7& q) {
                             return phi0()(q, canonical_extension(a, q),
                                           canonical_extension(b, q));
                         },
                         h);
    };
    return term(X, Y, Z) - term(Y, X, Z) + term(Z, X, Y);
}

double d_re_upsilon_fd(const SpherePoint& p, const std::array<Vec7, 4>& X,
                       double h) {
    auto value = [&](const Vec7& q, const Vec7& a, const Vec7& b,
                     const Vec7& c) {
        return star_phi0()(q, canonical_extension(a, q),
                           canonical_extension(b, q),
                           canonical_extension(c, q));
    };
    double acc = 0.0;
    double sign = 1.0;
    for (int i = 0; i < 4; ++i) {
        const Vec7* rest[3];
        int n = 0;
        for (int j = 0; j < 4; ++j)
            if (j != i) rest[n++] = &X[j];
        acc += sign * dir_deriv(p.p, X[i],
                                [&](const Vec7& q) {
                                    return value(q, *rest[0], *rest[1],
                                                 *rest[2]);
                                },
                                h);
        sign = -sign;
    }
    return acc;
}

double nabla_omega_fd(const SpherePoint& p, const Vec7& X, const Vec7& Y,
                      const Vec7& Z, double h) {
    // Canonical extensions are nabla-parallel at p, so the connection terms
    // drop and (nabla_X omega)(Y,Z) is a plain directional derivative.
    return dir_deriv(p.p, X,
                     [&](const Vec7& q) {
                         return phi0()(q, canonical_extension(Y, q),
                                       canonical_extension(Z, q));
                     },
                     h);
}

StructureResiduals structure_residuals(const SpherePoint& p, Rng& rng,
                                       int tuples, double h) {
    StructureResiduals out;
    for (int k = 0; k < tuples; ++k) {
        const Vec7 X = random_tangent(p, rng);
        const Vec7 Y = random_tangent(p, rng);
        const Vec7 Z = random_tangent(p, rng);
        const Vec7 W = random_tangent(p, rng);
        const double dom = domega_fd(p, X, Y, Z, h);
        const double im_u = upsilon(p, X, Y, Z).imag();
        out.domega_vs_im_upsilon =
            std::max(out.domega_vs_im_upsilon, std::abs(dom - 3.0 * im_u));
        const double dre = d_re_upsilon_fd(p, {X, Y, Z, W}, h);
        const double omsq = omega_wedge_omega(p, X, Y, Z, W);
        out.dre_upsilon_vs_omsq =
            std::max(out.dre_upsilon_vs_omsq, std::abs(dre - 2.0 * omsq));
        const double nom = nabla_omega_fd(p, X, Y, Z, h);
        out.nabla_omega_vs_third =
            std::max(out.nabla_omega_vs_third, std::abs(nom - dom / 3.0));
    }
    return out;
}

std::complex<double> upsilon_theta(const SpherePoint& p, double theta,
                                   const Vec7& x, const Vec7& y,
                                   const Vec7& z) {
    // Upsilon_0 = -i Upsilon; Upsilon_theta = e^{i theta} Upsilon_0.
    const std::complex<double> u0 =
        std::complex<double>(0.0, -1.0) * upsilon(p, x, y, z);
    return std::exp(std::complex<double>(0.0, theta)) * u0;
}

Vec7 random_tangent(const SpherePoint& p, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec7 v;
        for (int i = 0; i < 7; ++i) v[i] = rng.normal();
        v = project_tangent(p, v);
        const double n = norm(v);
        if (n > 1e-6) return v * (1.0 / n);
    }
    throw SamplingError("failed to draw a random tangent vector");
}

}  // namespace nklab
