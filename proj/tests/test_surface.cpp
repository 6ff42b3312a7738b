#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "nklab/catalog.hpp"
#include "nklab/errors.hpp"
#include "nklab/surface.hpp"

using namespace nklab;

TEST_CASE("analytic jets of the great 2-sphere are exact") {
    const auto patch = catalog_patch("geodesic-s2-assoc");
    const double s = 0.8, t = 0.45;
    const Jet2S j = patch->jets(s, t);
    const double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t),
                 st = std::sin(t);
    CHECK(j.p[0] == doctest::Approx(ct * cs).epsilon(1e-14));
    CHECK(j.p[1] == doctest::Approx(ct * ss).epsilon(1e-14));
    CHECK(j.p[2] == doctest::Approx(st).epsilon(1e-14));
    CHECK(j.us[0] == doctest::Approx(-ct * ss).epsilon(1e-14));
    CHECK(j.ut[2] == doctest::Approx(ct).epsilon(1e-14));
    CHECK(j.uss[0] == doctest::Approx(-ct * cs).epsilon(1e-14));
    CHECK(j.ust[1] == doctest::Approx(-st * cs).epsilon(1e-14));
    CHECK(j.utt[2] == doctest::Approx(-st).epsilon(1e-14));
    CHECK(sqrt_g(j) == doctest::Approx(ct).epsilon(1e-12));

    const auto tf = tangent_frame(j);
    CHECK(norm2(tf[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm2(tf[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot(tf[0], tf[1])) < 1e-12);
    CHECK(std::abs(dot(tf[0], j.p)) < 1e-12);

    // third-order partials of the circle factors collapse to minus the first
    const Jet3S j3 = patch->jets3_fd(s, t, 1e-3);
    CHECK(norm(j3.usss + j.us) < 1e-6);
    CHECK(norm(j3.uttt + j.ut) < 1e-6);
}

TEST_CASE("validation flags off-sphere maps and collapsed immersions") {
    for (const char* id :
         {"geodesic-s2-assoc", "geodesic-s2-nonholo",
          "halfsphere-freeboundary", "cap-umbilic", "tilted-control",
          "small-cmc"}) {
        CHECK_NOTHROW(validate_patch(*catalog_patch(id), 7, 0.05, 1e-10,
                                     1e-3));
    }
    const FdJetPatch off("off-sphere", Domain{0, 1, 0, 1}, false,
                         [](double s, double t) {
                             Vec7 v;
                             v[0] = 1.02 * std::cos(s);
                             v[1] = 1.02 * std::sin(s);
                             v[2] = 0.02 * t;
                             return v;
                         });
    CHECK_THROWS_AS(validate_patch(off, 5, 0.05, 1e-10, 1e-3),
                    ModelViolationError);
    const FdJetPatch collapsed("collapsed", Domain{0, 1, 0, 1}, false,
                               [](double, double) { return basis_vec(0); });
    CHECK_THROWS_AS(validate_patch(collapsed, 5, 0.05, 1e-10, 1e-3),
                    DegenerateInputError);
}

TEST_CASE("second fundamental form: symmetric, zero on great spheres") {
    const auto patch = catalog_patch("geodesic-s2-assoc");
    const Jet2S j = patch->jets(1.1, -0.4);
    const auto tf = tangent_frame(j);
    CHECK(norm(second_fundamental_form(j, tf[0], tf[0])) < 1e-10);
    CHECK(norm(second_fundamental_form(j, tf[0], tf[1])) < 1e-10);
    CHECK(norm(second_fundamental_form(j, tf[1], tf[1])) < 1e-10);
    CHECK(norm(mean_curvature(j)) < 1e-10);

    const auto cmc = catalog_patch("small-cmc");
    const Jet2S jc = cmc->jets(2.0, 0.3);
    const auto tfc = tangent_frame(jc);
    const Vec7 a = second_fundamental_form(jc, tfc[0], tfc[1]);
    const Vec7 b = second_fundamental_form(jc, tfc[1], tfc[0]);
    CHECK(norm(a - b) < 1e-10);
    CHECK(norm(mean_curvature(jc)) ==
          doctest::Approx(2.0 * 0.4 / std::sqrt(0.84)).epsilon(1e-8));
}

TEST_CASE("holomorphicity: both criteria agree, negative control separates") {
    const auto holo = catalog_patch("geodesic-s2-assoc");
    const auto nonholo = catalog_patch("geodesic-s2-nonholo");
    for (double s : {0.3, 2.2, 4.4}) {
        for (double t : {-0.7, 0.1, 0.9}) {
            const Jet2S jh = holo->jets(s, t);
            CHECK(holomorphicity_defect(jh) < 1e-10);
            CHECK(std::abs(holomorphicity_omega_gap(jh)) < 1e-10);
            CHECK(is_holomorphic_point(jh, 1e-8));
            const Jet2S jn = nonholo->jets(s, t);
            CHECK(holomorphicity_defect(jn) > 0.5);
            CHECK_FALSE(is_holomorphic_point(jn, 1e-8));
        }
    }
}

TEST_CASE("adapted U(2)-frames extend the tangent frame") {
    const auto patch = catalog_patch("halfsphere-freeboundary");
    const AdaptedU2Frame fr = adapt_u2_frame(*patch, 1.3, 0.6);
    const Jet2S j = patch->jets(1.3, 0.6);
    const auto tf = tangent_frame(j);
    CHECK(norm(fr.frame.e[0] - tf[0]) < 1e-9);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(dot(fr.frame.e[a], fr.frame.e[b]) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
    CHECK(std::abs(upsilon_on_frame(fr.frame) -
                   std::complex<double>(1.0, 0.0)) < 1e-8);
    // non-holomorphic tangent planes cannot carry an adapted frame
    const auto bad = catalog_patch("geodesic-s2-nonholo");
    CHECK_THROWS_AS(adapt_u2_frame(*bad, 1.0, 0.2), PreconditionError);
}

TEST_CASE("Hopf coefficients vanish on totally geodesic holomorphic disks") {
    const auto patch = catalog_patch("halfsphere-freeboundary");
    for (double s : {0.5, 3.0}) {
        const AdaptedU2Frame fr = adapt_u2_frame(*patch, s, 0.7);
        const HopfCoefficients hc = hopf_coefficients(*patch, fr);
        CHECK(hopf_magnitude(hc) < 1e-8);
        CHECK(hc.consistency < 1e-8);
    }
}

TEST_CASE("free-boundary mechanics on the half-sphere and the tilted control") {
    const auto good = catalog_patch("halfsphere-freeboundary");
    const GeodesicBall ball = *catalog_ball("halfsphere-freeboundary");
    for (double s : {0.2, 1.7, 4.9}) {
        const BoundaryOrthoResult r = boundary_orthogonality(*good, ball, s);
        CHECK(r.on_sphere_residual < 1e-10);
        CHECK(r.angle_defect < 1e-8);
        CHECK(r.umbilicity_residual < 1e-5);
    }
    const auto cap = catalog_patch("cap-umbilic");
    const GeodesicBall cball = *catalog_ball("cap-umbilic");
    const BoundaryOrthoResult rc = boundary_orthogonality(*cap, cball, 2.0);
    CHECK(rc.on_sphere_residual < 1e-10);
    CHECK(rc.angle_defect < 1e-8);
    CHECK(rc.umbilicity_residual < 1e-5);  // shape operator = cot(pi/3) id

    const auto tilted = catalog_patch("tilted-control");
    const GeodesicBall tball = *catalog_ball("tilted-control");
    const BoundaryOrthoResult rt = boundary_orthogonality(*tilted, tball, 2.0);
    CHECK(rt.angle_defect == doctest::Approx(0.15).epsilon(1e-6));
}

TEST_CASE("rigidity probe: clean configuration passes, tilt is flagged") {
    const auto good = catalog_patch("halfsphere-freeboundary");
    const RigidityReport ok =
        rigidity_probe(*good, *catalog_ball("halfsphere-freeboundary"), 24,
                       1e-6);
    CHECK_FALSE(ok.flagged);
    CHECK(ok.max_II12 < 1e-8);
    CHECK(ok.max_phi < 1e-8);
    CHECK(ok.max_angle_defect < 1e-8);

    const auto tilted = catalog_patch("tilted-control");
    const RigidityReport flagged =
        rigidity_probe(*tilted, *catalog_ball("tilted-control"), 24, 1e-6);
    CHECK(flagged.flagged);
    CHECK(!flagged.reason.empty());
    CHECK(flagged.max_holo_defect > 0.1);
}

TEST_CASE("boundary-edge helpers refuse closed patches") {
    const auto closed = catalog_patch("geodesic-s2-assoc");
    const GeodesicBall ball = *catalog_ball("halfsphere-freeboundary");
    CHECK_THROWS_AS(boundary_orthogonality(*closed, ball, 0.5),
                    PreconditionError);
}
