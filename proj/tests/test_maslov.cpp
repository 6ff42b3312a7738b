#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nklab/catalog.hpp"
#include "nklab/errors.hpp"
#include "nklab/maslov.hpp"

using namespace nklab;

TEST_CASE("disk model calibrates the winding normalization to +2") {
    const MaslovResult r = maslov_index(disk_model_loop(64));
    CHECK(r.index == 2);
    CHECK(r.winding_defect < 1e-6);
    CHECK(r.min_det > 0.5);
}

TEST_CASE("index is invariant under null-homotopic gauge rotations") {
    const MaslovLoopData base = disk_model_loop(96);
    for (double amp : {0.3, 1.0}) {
        const MaslovLoopData rotated = gauge_rotated(
            base, [amp](double s) { return amp * std::sin(s); });
        CHECK(maslov_index(rotated).index == 2);
    }
}

TEST_CASE("winding far from an integer is refused, not rounded") {
    // rotate by a non-periodic phase: s/2 advances det^2 by half a winding
    const MaslovLoopData base = disk_model_loop(64);
    const MaslovLoopData skewed =
        gauge_rotated(base, [](double s) { return 0.25 * s; });
    CHECK_THROWS_AS(maslov_index(skewed), SamplingError);
}

TEST_CASE("too-coarse loops are refused") {
    CHECK_THROWS_AS(maslov_index(disk_model_loop(7)), PreconditionError);
}

TEST_CASE("transported trivializations stay unitary along the boundary") {
    const auto patch = catalog_patch("halfsphere-lag");
    const BoundaryTrivialization tr =
        transport_boundary_trivialization(*patch, 32);
    REQUIRE(tr.s.size() == tr.base.size());
    REQUIRE(tr.s.size() == tr.u1.size());
    REQUIRE(tr.s.size() == tr.v.size());
    for (std::size_t i = 0; i < tr.s.size(); ++i) {
        CHECK(norm2(tr.u1[i]) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(norm2(tr.v[i][0]) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(norm2(tr.v[i][1]) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(dot(tr.v[i][0], tr.v[i][1])) < 1e-6);
        CHECK(std::abs(dot(tr.u1[i], tr.base[i])) < 1e-6);
    }
}

TEST_CASE("quaternion model matches J on the normal bundle") {
    const auto patch = catalog_patch("halfsphere-lag");
    CHECK(quaternion_model_residual(*patch, 24) < 1e-8);
}

TEST_CASE("boundary pairs: tangent +2, normal -2, full 0, additive") {
    const auto patch = catalog_patch("halfsphere-lag");
    const LagrangianPatch& lag = catalog_lagrangian();
    const MaslovResult t = maslov_index(tangent_loop_data(*patch, 64));
    const MaslovResult n = maslov_index(normal_loop_data(*patch, lag, 64));
    const MaslovResult f = maslov_index(full_loop_data(*patch, lag, 64));
    CHECK(t.index == 2);
    CHECK(n.index == -2);
    CHECK(f.index == 0);
    CHECK(t.winding_defect < 0.02);
    CHECK(n.winding_defect < 0.02);
    CHECK(f.winding_defect < 0.02);

    const MaslovDecomposition dec =
        maslov_decomposition_check(*patch, lag, 64);
    CHECK(dec.tangent == 2);
    CHECK(dec.normal == -2);
    CHECK(dec.full == 0);
    CHECK(dec.additive);
}

TEST_CASE("indices are stable under boundary refinement") {
    const auto patch = catalog_patch("halfsphere-lag");
    const LagrangianPatch& lag = catalog_lagrangian();
    CHECK(maslov_index(tangent_loop_data(*patch, 96)).index == 2);
    CHECK(maslov_index(normal_loop_data(*patch, lag, 96)).index == -2);
}

TEST_CASE("closed patches cannot produce boundary loop data") {
    const auto closed = catalog_patch("geodesic-s2-assoc");
    CHECK_THROWS_AS(transport_boundary_trivialization(*closed, 32),
                    PreconditionError);
}
