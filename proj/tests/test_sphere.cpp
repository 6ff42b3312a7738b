#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "nklab/cone.hpp"
#include "nklab/errors.hpp"
#include "nklab/rng.hpp"
#include "nklab/sphere.hpp"
#include "nklab/vec7.hpp"

using namespace nklab;

namespace {
Rng fresh_rng() { return Rng(31415ull); }
SpherePoint random_point(Rng& rng) {
    Vec7 v;
    for (auto& x : v.c) x = rng.normal();
    return SpherePoint(v);
}
}  // namespace

TEST_CASE("tangent projection and the almost-complex structure at e1") {
    const SpherePoint p(basis_vec(0));
    // J_p = p x . : values forced by the multiplication table's first row
    CHECK(norm(almost_J(p, basis_vec(1)) - basis_vec(2)) ==
          doctest::Approx(0.0));
    CHECK(norm(almost_J(p, basis_vec(3)) - basis_vec(4)) ==
          doctest::Approx(0.0));
    CHECK(norm(almost_J(p, basis_vec(5)) - basis_vec(6)) ==
          doctest::Approx(0.0));
    // radial directions are annihilated
    CHECK(norm(almost_J(p, p.p)) == doctest::Approx(0.0));

    Rng rng = fresh_rng();
    for (int k = 0; k < 30; ++k) {
        const SpherePoint q = random_point(rng);
        Vec7 raw;
        for (auto& x : raw.c) x = rng.normal();
        const Vec7 tan = project_tangent(q, raw);
        CHECK(std::abs(dot(tan, q.p)) < 1e-12);
        CHECK(norm(project_tangent(q, tan) - tan) < 1e-12);
        const Vec7 x = random_tangent(q, rng), y = random_tangent(q, rng);
        CHECK(norm(almost_J(q, almost_J(q, x)) + x) < 1e-12);
        CHECK(dot(almost_J(q, x), almost_J(q, y)) ==
              doctest::Approx(dot(x, y)).epsilon(1e-10));
        CHECK(omega(q, x, y) == doctest::Approx(-omega(q, y, x)));
    }
}

TEST_CASE("Upsilon at the pinned point") {
    const SpherePoint p(basis_vec(0));
    // real part: (e1 -| *phi0)(e2,e4,e6) = *phi0(e1,e2,e4,e6) = 0 because the
    // complementary triple (3,5,7) carries no phi0 coefficient; imaginary
    // part: phi0(e2,e4,e6) = 1.
    const std::complex<double> u =
        upsilon(p, basis_vec(1), basis_vec(3), basis_vec(5));
    CHECK(u.real() == doctest::Approx(0.0));
    CHECK(u.imag() == doctest::Approx(1.0));
}

TEST_CASE("SU(3) frames: unitarity, J-pairing, pinned phase") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 10; ++k) {
        const SpherePoint p = random_point(rng);
        const FrameSU3 fr = su3_frame(p);
        for (int a = 0; a < 6; ++a) {
            CHECK(std::abs(dot(fr.e[a], p.p)) < 1e-10);
            for (int b = 0; b < 6; ++b)
                CHECK(dot(fr.e[a], fr.e[b]) ==
                      doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-9));
        }
        for (int leg = 0; leg < 3; ++leg)
            CHECK(norm(almost_J(p, fr.e[2 * leg]) - fr.e[2 * leg + 1]) <
                  1e-9);
        const std::complex<double> one = upsilon_on_frame(fr);
        CHECK(std::abs(one - std::complex<double>(1.0, 0.0)) < 1e-8);
        // measured wedge normalization: (-1)^3 (i/2)^3 (Upsilon ^ conj) = 1
        const std::complex<double> i2(0.0, 0.5);
        CHECK(std::abs(-(i2 * i2 * i2) * upsilon_wedge_conj(fr) -
                       std::complex<double>(1.0, 0.0)) < 1e-8);
    }
}

TEST_CASE("canonical extensions have radial derivative at the base point") {
    Rng rng = fresh_rng();
    const SpherePoint p = random_point(rng);
    const Vec7 y = random_tangent(p, rng);
    const Vec7 e = random_tangent(p, rng);
    const double h = 1e-5;
    // walk along the great circle in direction e and difference the extension
    auto at = [&](double t) {
        const Vec7 q = std::cos(t) * p.p + std::sin(t) * e;
        return canonical_extension(y, q);
    };
    const Vec7 deriv = (1.0 / (2.0 * h)) * (at(h) - at(-h));
    // tangential part must vanish; the radial part equals -<y,e>
    CHECK(norm(project_tangent(p, deriv)) < 1e-8);
    CHECK(dot(deriv, p.p) == doctest::Approx(-dot(y, e)).epsilon(1e-6));
}

TEST_CASE("torsion tensor: closed form, fd route, and symmetries") {
    const SpherePoint p(basis_vec(0));
    // P(e2,e4) = tangential part of e2 x e4 = e6 (already orthogonal to e1)
    CHECK(norm(torsion_P(p, basis_vec(1), basis_vec(3)) - basis_vec(5)) <
          1e-12);

    Rng rng = fresh_rng();
    for (int k = 0; k < 10; ++k) {
        const SpherePoint q = random_point(rng);
        const Vec7 x = random_tangent(q, rng), y = random_tangent(q, rng),
                   z = random_tangent(q, rng);
        CHECK(norm(torsion_P(q, x, y) - torsion_P_fd(q, x, y, 1e-4)) < 1e-6);
        CHECK(norm(torsion_P(q, x, y) + torsion_P(q, y, x)) < 1e-10);
        CHECK(std::abs(dot(torsion_P(q, x, y), z) +
                       dot(torsion_P(q, x, z), y)) < 1e-10);
        CHECK(norm(torsion_P(q, x, almost_J(q, y)) +
                   almost_J(q, torsion_P(q, x, y))) < 1e-10);
        CHECK(std::abs(dot(torsion_P(q, x, y), x)) < 1e-10);
    }
}

TEST_CASE("curvature: closed form is the round metric, fd agrees") {
    CHECK(riemann_closed(basis_vec(1), basis_vec(3), basis_vec(3),
                         basis_vec(1)) == doctest::Approx(1.0));
    CHECK(riemann_closed(basis_vec(1), basis_vec(3), basis_vec(1),
                         basis_vec(3)) == doctest::Approx(-1.0));
    CHECK(riemann_closed(basis_vec(1), basis_vec(3), basis_vec(5),
                         basis_vec(1)) == doctest::Approx(0.0));
    Rng rng = fresh_rng();
    for (int k = 0; k < 6; ++k) {
        const SpherePoint q = random_point(rng);
        const Vec7 x = random_tangent(q, rng), y = random_tangent(q, rng),
                   z = random_tangent(q, rng), w = random_tangent(q, rng);
        CHECK(std::abs(riemann_closed(x, y, z, w) -
                       riemann_fd(q, x, y, z, w, 1e-3)) < 1e-4);
        CHECK(curvature_identity_residual(q, x, y) < 1e-10);
    }
}

TEST_CASE("structure equations hold at sampled points") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 8; ++k) {
        const SpherePoint q = random_point(rng);
        const StructureResiduals r = structure_residuals(q, rng, 2, 1e-4);
        CHECK(r.domega_vs_im_upsilon < 1e-5);
        CHECK(r.dre_upsilon_vs_omsq < 1e-5);
        CHECK(r.nabla_omega_vs_third < 1e-5);
    }
}

TEST_CASE("rotated volume forms interpolate Upsilon correctly") {
    Rng rng = fresh_rng();
    const SpherePoint q = random_point(rng);
    const Vec7 x = random_tangent(q, rng), y = random_tangent(q, rng),
               z = random_tangent(q, rng);
    const std::complex<double> u = upsilon(q, x, y, z);
    const std::complex<double> u0 = upsilon_theta(q, 0.0, x, y, z);
    const std::complex<double> uq = upsilon_theta(q, 0.5 * 3.14159265358979324,
                                                  x, y, z);
    // theta = 0 is Upsilon_0 = -i Upsilon; theta = pi/2 recovers Upsilon
    CHECK(std::abs(u0 - std::complex<double>(0.0, -1.0) * u) < 1e-12);
    CHECK(std::abs(uq - u) < 1e-12);
    // structure equations for a rotated phase
    const UpsilonThetaResiduals r = upsilon_theta_residuals(0.7, rng, 2, 1e-4);
    CHECK(r.d_re < 1e-5);
    CHECK(r.d_im < 1e-5);
    CHECK(r.d_omega < 1e-5);
}

TEST_CASE("nearly-Kaehler connection is metric and almost-complex") {
    Rng rng = fresh_rng();
    const SpherePoint p = random_point(rng);
    const Vec7 dir = random_tangent(p, rng);
    const Vec7 y1 = random_tangent(p, rng), y2 = random_tangent(p, rng);
    Curve c = [&](double t) { return std::cos(t) * p.p + std::sin(t) * dir; };
    VecField V1 = [&](double t) { return canonical_extension(y1, c(t)); };
    VecField V2 = [&](double t) { return canonical_extension(y2, c(t)); };
    VecField JV1 = [&](double t) {
        return almost_J(SpherePoint(c(t)), V1(t));
    };
    // D(J V) = J D V
    const Vec7 lhs = nk_connection(c, JV1, 0.0, 1e-4);
    const Vec7 rhs = almost_J(p, nk_connection(c, V1, 0.0, 1e-4));
    CHECK(norm(lhs - rhs) < 1e-6);
    // metric compatibility d/dt <V1,V2> = <DV1,V2> + <V1,DV2>: for canonical
    // extensions the left side vanishes at t = 0, so the torsion halves on the
    // right must cancel through the P symmetries
    const double h = 1e-5;
    const double dmetric =
        (dot(V1(h), V2(h)) - dot(V1(-h), V2(-h))) / (2.0 * h);
    const double paired = dot(nk_connection(c, V1, 0.0, 1e-4), y2) +
                          dot(y1, nk_connection(c, V2, 0.0, 1e-4));
    CHECK(dmetric == doctest::Approx(paired).epsilon(1e-4));
}

TEST_CASE("degenerate inputs are refused") {
    CHECK_THROWS_AS(SpherePoint(Vec7{}), DegenerateInputError);
}
