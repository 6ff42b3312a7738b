#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "nklab/catalog.hpp"
#include "nklab/cone.hpp"
#include "nklab/errors.hpp"
#include "nklab/rng.hpp"
#include "nklab/sphere.hpp"

using namespace nklab;

namespace {
Rng fresh_rng() { return Rng(777ull); }
}

TEST_CASE("cone coordinates round-trip through the ambient chart") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 10; ++k) {
        const ConePoint cp = random_cone_point(rng);
        CHECK(norm(cp.ambient() - cp.r * cp.m.p) < 1e-14);
        const ConeVec w = random_cone_vec(cp, rng);
        const Vec7 amb = cone_to_ambient(cp, w);
        const ConeVec back = ambient_to_cone(cp, amb);
        CHECK(std::abs(back.a - w.a) < 1e-12);
        CHECK(norm(back.v - w.v) < 1e-12);
    }
    CHECK_THROWS_AS(ConePoint(0.0, SpherePoint(basis_vec(0))), DomainError);
    CHECK_THROWS_AS(ConePoint(-1.0, SpherePoint(basis_vec(0))), DomainError);
}

TEST_CASE("cone 3-form restricts to omega and Re Upsilon_0 on the link") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 10; ++k) {
        Vec7 raw;
        for (auto& x : raw.c) x = rng.normal();
        const SpherePoint m(raw);
        const ConePoint cp(1.0, m);
        const Vec7 x = random_tangent(m, rng), y = random_tangent(m, rng),
                   z = random_tangent(m, rng);
        const ConeVec dr{1.0, Vec7{}};
        const ConeVec wx{0.0, x}, wy{0.0, y}, wz{0.0, z};
        // phi(dr, x, y) = omega(x, y) at r = 1
        CHECK(cone_phi(cp, dr, wx, wy) ==
              doctest::Approx(omega(m, x, y)).epsilon(1e-10));
        // phi(x, y, z) = Re Upsilon_0 = Im Upsilon at r = 1
        CHECK(cone_phi(cp, wx, wy, wz) ==
              doctest::Approx(upsilon(m, x, y, z).imag()).epsilon(1e-10));
    }
}

TEST_CASE("cone forms equal the flat forms at every sampled point") {
    Rng rng = fresh_rng();
    double worst_phi = 0.0, worst_psi = 0.0;
    for (int k = 0; k < 30; ++k) {
        const ConePoint cp = random_cone_point(rng);
        const ConeVec w1 = random_cone_vec(cp, rng),
                      w2 = random_cone_vec(cp, rng),
                      w3 = random_cone_vec(cp, rng),
                      w4 = random_cone_vec(cp, rng);
        worst_phi = std::max(worst_phi,
                             std::abs(cone_phi(cp, w1, w2, w3) -
                                      flat_phi_on_cone(cp, w1, w2, w3)));
        worst_psi = std::max(worst_psi,
                             std::abs(cone_psi(cp, w1, w2, w3, w4) -
                                      flat_psi_on_cone(cp, w1, w2, w3, w4)));
    }
    CHECK(worst_phi < 1e-7);
    CHECK(worst_psi < 1e-7);
    const ConeCalibration& cal = cone_orientation_calibration();
    CHECK(cal.sign == 1.0);
    CHECK(cal.residual < 1e-7);
}

TEST_CASE("contraction identities recover the link structures at r = 1") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 6; ++k) {
        Vec7 raw;
        for (auto& x : raw.c) x = rng.normal();
        const ConeContractionResiduals r =
            cone_contraction_residuals(SpherePoint(raw), rng, 4);
        CHECK(r.omega_residual < 1e-10);
        CHECK(r.re_residual < 1e-10);
        CHECK(r.im_residual < 1e-10);
    }
}

TEST_CASE("torsion-free: d phi and d psi vanish, residual decays at h^4") {
    Rng rng = fresh_rng();
    const ConePoint cp = random_cone_point(rng);
    std::array<ConeVec, 4> w4;
    for (auto& w : w4) w = random_cone_vec(cp, rng);
    std::array<ConeVec, 5> w5;
    for (auto& w : w5) w = random_cone_vec(cp, rng);
    CHECK(std::abs(cone_dphi(cp, w4, 1e-4)) < 1e-5);
    CHECK(std::abs(cone_dpsi(cp, w5, 1e-4)) < 1e-5);
    // decay order of the five-point stencil: evaluate where truncation
    // dominates roundoff and confirm doubling h scales the residual by 2^4
    const double dphi_h = std::abs(cone_dphi(cp, w4, 5e-3));
    const double dphi_2h = std::abs(cone_dphi(cp, w4, 1e-2));
    const double dpsi_h = std::abs(cone_dpsi(cp, w5, 5e-3));
    const double dpsi_2h = std::abs(cone_dpsi(cp, w5, 1e-2));
    if (dphi_h > 1e-9) CHECK(dphi_2h / dphi_h == doctest::Approx(16.0).epsilon(0.15));
    if (dpsi_h > 1e-9) CHECK(dpsi_2h / dpsi_h == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("explicit primitives differentiate onto the cone forms") {
    Rng rng = fresh_rng();
    for (int k = 0; k < 4; ++k) {
        const ConePoint cp = random_cone_point(rng);
        std::array<ConeVec, 3> w3;
        for (auto& w : w3) w = random_cone_vec(cp, rng);
        std::array<ConeVec, 4> w4;
        for (auto& w : w4) w = random_cone_vec(cp, rng);
        CHECK(phi_primitive_residual(cp, w3, 1e-4) < 1e-5);
        CHECK(psi_primitive_residual(cp, w4, 1e-4) < 1e-5);
    }
}

TEST_CASE("associativity of the cone tracks holomorphicity of the link surface") {
    const AssociativityReport holo =
        associativity_check(*catalog_patch("geodesic-s2-assoc"), 16, 1e-3);
    CHECK(holo.max_residual < 1e-6);
    CHECK(holo.max_holo_defect < 1e-6);
    CHECK(holo.equivalence_both_ways);

    const AssociativityReport control =
        associativity_check(*catalog_patch("geodesic-s2-nonholo"), 16, 1e-3);
    CHECK(control.max_residual > 0.5);
    CHECK(control.max_holo_defect > 0.5);
    CHECK(control.equivalence_both_ways);
    REQUIRE(!control.samples.empty());
    for (const auto& s : control.samples) CHECK(s.residual > 0.5);
}
