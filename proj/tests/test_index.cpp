#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nklab/catalog.hpp"
#include "nklab/errors.hpp"
#include "nklab/index_lab.hpp"

using namespace nklab;

namespace {
constexpr double kPi = 3.14159265358979323846;

QuadFormMatrix assembled(std::size_t nodes) {
    const auto patch = catalog_patch("halfsphere-lag");
    const BasisSpec basis{admissible_basis(catalog_lagrangian()), 1e-8};
    return assemble_quadratic_form(*patch, catalog_lagrangian(), basis, nodes);
}
}  // namespace

TEST_CASE("assembled quadratic form: symmetric, pinned flat-leg diagonal") {
    const QuadFormMatrix qf = assembled(32);
    CHECK(qf.size() == 16);
    CHECK(qf.names.size() == 16);
    CHECK(qf.symmetry_residual() < 1e-10);
    // Q(e4, e4) = Q(e7, e7) = -4 pi on the half-sphere
    int found = 0;
    for (std::size_t i = 0; i < qf.size(); ++i) {
        if (qf.names[i] == "e4" || qf.names[i] == "e7") {
            ++found;
            CHECK(qf.q[i][i] == doctest::Approx(-4.0 * kPi).epsilon(1e-4));
            CHECK(qf.gram[i][i] == doctest::Approx(2.0 * kPi).epsilon(1e-6));
        }
    }
    CHECK(found == 2);
}

TEST_CASE("generalized spectrum matches the independent reference") {
    const QuadFormMatrix qf = assembled(32);
    const std::vector<double> spec = generalized_spectrum(qf);
    REQUIRE(spec.size() == 16);
    for (std::size_t i = 1; i < spec.size(); ++i) CHECK(spec[i - 1] <= spec[i]);
    const std::vector<double> pinned = {
        -2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        4.0,  4.0,  4.0, 4.0, 6.0, 6.0, 32.0 / 3.0, 32.0 / 3.0};
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(spec[i] == doctest::Approx(pinned[i]).epsilon(2e-3));
    CHECK(morse_index_lower_bound(qf, default_eig_tol(qf)) == 2);
}

TEST_CASE("D singular values: pinned list, kernel of dimension two") {
    const QuadFormMatrix qf = assembled(32);
    const std::vector<double> sv = d_singular_values(qf);
    REQUIRE(sv.size() == 16);
    const double r2 = std::sqrt(2.0), r10 = std::sqrt(10.0);
    const std::vector<double> pinned = {0.0,       0.0,       r2,        r2,
                                        r2,        r2,        2.0 * r2,  2.0 * r2,
                                        r10,       r10,       3.1862706, 3.1862706,
                                        4.4550735, 4.4550735, 5.0332230, 5.0332230};
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(sv[i] == doctest::Approx(pinned[i]).epsilon(1e-3));
    CHECK(d_kernel_dimension(qf) == 2);
    CHECK(sv[1] < 1e-5);
    CHECK(sv[2] > 1.0);
}

TEST_CASE("verdict branch logic") {
    CHECK(riemann_roch_expected(1, -2) == 0);
    CHECK(riemann_roch_expected(1, 2) == 4);
    CHECK(index_verdict(1, 0) == "bound vacuous");
    CHECK(index_verdict(3, 2) == "bound satisfied on the spanned subspace");
    CHECK(index_verdict(0, 2) ==
          "basis insufficiency rather than bound failure");
}

TEST_CASE("full index pipeline on the half-sphere configuration") {
    const auto patch = catalog_patch("halfsphere-lag");
    const BasisSpec basis{admissible_basis(catalog_lagrangian()), 1e-8};
    const IndexReport ir = verify_index_bound(*patch, catalog_lagrangian(),
                                              basis, 32, 48);
    CHECK(ir.negative_count == 2);
    CHECK(ir.kernel_dimension == 2);
    CHECK(ir.maslov_tangent == 2);
    CHECK(ir.maslov_normal == -2);
    CHECK(ir.maslov_total == 0);
    CHECK(ir.additivity);
    CHECK(ir.rr_expected == 0);
    CHECK(ir.bound_satisfied);
    CHECK(ir.verdict == "bound vacuous");
}

TEST_CASE("negative count grows monotonically with the basis") {
    const auto patch = catalog_patch("halfsphere-lag");
    const auto fields = admissible_basis(catalog_lagrangian());
    const BasisSpec small{
        std::vector<NormalField>(fields.begin(), fields.begin() + 8), 1e-8};
    const BasisSpec full{fields, 1e-8};
    const QuadFormMatrix qs = assemble_quadratic_form(
        *patch, catalog_lagrangian(), small, 32);
    const QuadFormMatrix qfull = assemble_quadratic_form(
        *patch, catalog_lagrangian(), full, 32);
    const int ns = morse_index_lower_bound(qs, default_eig_tol(qs));
    const int nf = morse_index_lower_bound(qfull, default_eig_tol(qfull));
    CHECK(ns == 2);
    CHECK(ns <= nf);
}

TEST_CASE("non-admissible basis fields are rejected during assembly") {
    const auto patch = catalog_patch("halfsphere-lag");
    std::vector<NormalField> fields = {
        {"winder", [](const Vec7& q) {
             Vec7 v;
             v[3] = q.c[0];
             v[4] = q.c[0] * q.c[1];
             v[5] = q.c[1] * q.c[1];
             return v;
         }}};
    const BasisSpec bad{fields, 1e-8};
    CHECK_THROWS_AS(assemble_quadratic_form(*patch, catalog_lagrangian(), bad,
                                            16),
                    PreconditionError);
}

TEST_CASE("empty basis is rejected") {
    const auto patch = catalog_patch("halfsphere-lag");
    const BasisSpec empty{{}, 1e-8};
    CHECK_THROWS_AS(assemble_quadratic_form(*patch, catalog_lagrangian(),
                                            empty, 16),
                    PreconditionError);
}
