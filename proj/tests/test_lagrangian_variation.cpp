#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <string>

#include "nklab/catalog.hpp"
#include "nklab/errors.hpp"
#include "nklab/lagrangian.hpp"
#include "nklab/rng.hpp"
#include "nklab/variation.hpp"

using namespace nklab;

namespace {
constexpr double kPi = 3.14159265358979323846;

NormalField const_e4() {
    return {"e4", [](const Vec7&) { return basis_vec(3); }};
}
NormalField damped_e5() {
    return {"p3*e5", [](const Vec7& q) {
                Vec7 v;
                v[4] = q.c[2];
                return v;
            }};
}
}  // namespace

TEST_CASE("coassociative 4-plane search lands on span(e1,e2,e4,e7)") {
    const CoassociativeSearchResult r = find_coassociative_plane();
    CHECK(r.axes == std::array<int, 4>{0, 1, 3, 6});
    CHECK(r.phi_residual < 1e-10);
    CHECK(r.candidates_tested >= 1);
}

TEST_CASE("Lagrangian link: embedding, tang, omega vanishing") {
    const LagrangianPatch& lag = catalog_lagrangian();
    CHECK(lag.axes() == std::array<int, 4>{0, 1, 3, 6});

    Rng rng(99ull);
    for (int k = 0; k < 12; ++k) {
        const double a = rng.uniform(0.2, 2.9), b = rng.uniform(0.2, 2.9),
                     c = rng.uniform(0.0, 6.2);
        const Vec7 q = lag.embed(a, b, c);
        CHECK(norm(q) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(lag.contains(q, 1e-10));
        // only the four plane axes are populated
        CHECK(std::abs(q[2]) < 1e-14);
        CHECK(std::abs(q[4]) < 1e-14);
        CHECK(std::abs(q[5]) < 1e-14);

        const auto tb = lag.tangent_basis(q);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(dot(tb[i], q)) < 1e-10);
            CHECK(lag.tangent_distance(q, tb[i]) < 1e-9);
            for (int j = 0; j < 3; ++j)
                CHECK(dot(tb[i], tb[j]) ==
                      doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        }
        CHECK(lag.omega_residual_at(q) < 1e-10);
        // e3 is orthogonal to the plane, so its tangent distance is 1
        CHECK(lag.tangent_distance(q, basis_vec(2)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(lag.omega_residual(32, rng) < 1e-10);

    // closest-point projection: perturb off the plane and recover
    const Vec7 q0 = lag.embed(1.1, 0.8, 2.0);
    Vec7 off = q0 + 0.05 * basis_vec(2) + 0.03 * basis_vec(4);
    const Vec7 back = lag.closest_point(off);
    CHECK(lag.contains(back, 1e-9));
    CHECK(norm(back - q0) < 0.01);
}

TEST_CASE("jet-1 embedding derivatives match finite differences") {
    const LagrangianPatch& lag = catalog_lagrangian();
    const double a = 0.9, b = 1.4, c = 0.6, h = 1e-5;
    const auto jet = lag.embed_jet1(a, b, c);
    CHECK(norm(jet[0] - lag.embed(a, b, c)) < 1e-14);
    const Vec7 da = (1.0 / (2 * h)) * (lag.embed(a + h, b, c) -
                                       lag.embed(a - h, b, c));
    const Vec7 db = (1.0 / (2 * h)) * (lag.embed(a, b + h, c) -
                                       lag.embed(a, b - h, c));
    const Vec7 dc = (1.0 / (2 * h)) * (lag.embed(a, b, c + h) -
                                       lag.embed(a, b, c - h));
    CHECK(norm(jet[1] - da) < 1e-9);
    CHECK(norm(jet[2] - db) < 1e-9);
    CHECK(norm(jet[3] - dc) < 1e-9);
}

TEST_CASE("subspace intersection finds the common plane") {
    const std::vector<Vec7> a = {basis_vec(0), basis_vec(1), basis_vec(2)};
    const std::vector<Vec7> b = {basis_vec(1), basis_vec(2), basis_vec(3)};
    const auto inter = subspace_intersection(a, b);
    CHECK(inter.size() == 2);
    for (const Vec7& v : inter) {
        CHECK(std::abs(v[0]) < 1e-9);
        CHECK(std::abs(v[3]) < 1e-9);
        CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-9));
    }
    const std::vector<Vec7> c = {basis_vec(4), basis_vec(5)};
    CHECK(subspace_intersection(a, c).empty());
}

TEST_CASE("normal fields evaluate through the normal projection") {
    const auto patch = catalog_patch("halfsphere-lag");
    const NormalField f = const_e4();
    const Vec7 eta = eval_field(*patch, f, 0.7, 0.5);
    const Jet2S j = patch->jets(0.7, 0.5);
    // e4 is already normal to the half-sphere patch (axes 0,1,2)
    CHECK(norm(eta - basis_vec(3)) < 1e-12);
    CHECK(std::abs(dot(eta, j.p)) < 1e-12);
    CHECK(std::abs(dot(eta, j.us)) < 1e-12);
    CHECK(std::abs(dot(eta, j.ut)) < 1e-12);
}

TEST_CASE("constant normal legs lie in the kernel of D") {
    const auto patch = catalog_patch("halfsphere-lag");
    const PatchField pf = as_patch_field(*patch, const_e4());
    for (double s : {0.4, 2.6}) {
        for (double t : {0.3, 1.0}) {
            CHECK(norm(nabla_perp_frame(*patch, s, t, pf).d1) < 1e-8);
            CHECK(norm(nabla_perp_frame(*patch, s, t, pf).d2) < 1e-8);
            const DFrame df = dirac_D_frame(*patch, s, t, pf);
            CHECK(norm(df.d1) < 1e-8);
            CHECK(norm(df.d2) < 1e-8);
            CHECK(std::abs(alpha_form(*patch, s, t,
                                      tangent_frame(patch->jets(s, t))[0],
                                      pf)) < 1e-8);
        }
    }
}

TEST_CASE("admissible basis: sixteen distinct fields tangent to the link") {
    const LagrangianPatch& lag = catalog_lagrangian();
    const auto basis = admissible_basis(lag);
    CHECK(basis.size() == 16);
    std::set<std::string> names;
    for (const auto& f : basis) names.insert(f.name);
    CHECK(names.size() == 16);
    const auto patch = catalog_patch("halfsphere-lag");
    for (const auto& f : basis)
        CHECK(boundary_tangency_residual(*patch, lag, f, 32) < 1e-8);
}

TEST_CASE("exponential family stays spherical and reproduces the field") {
    const auto patch = catalog_patch("halfsphere-lag");
    const NormalField f = damped_e5();
    const Family fam = exp_family(*patch, f);
    for (double eps : {0.0, 0.05, -0.1}) {
        const Vec7 q = fam.map(1.2, 0.8, eps);
        CHECK(norm(q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(norm(fam.map(1.2, 0.8, 0.0) - patch->point(1.2, 0.8)) < 1e-14);
    const double h = 1e-5;
    const Vec7 vel = (1.0 / (2 * h)) * (fam.map(1.2, 0.8, h) -
                                        fam.map(1.2, 0.8, -h));
    CHECK(norm(vel - eval_field(*patch, f, 1.2, 0.8)) < 1e-8);
}

TEST_CASE("area quadrature: closed values and refinement guard") {
    CHECK(area(*catalog_patch("halfsphere-lag"), 32) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(area_checked(*catalog_patch("cap-umbilic"), 32) ==
          doctest::Approx(kPi).epsilon(1e-10));
    CHECK(area_checked(*catalog_patch("small-cmc"), 32) ==
          doctest::Approx(4.0 * kPi * 0.84).epsilon(1e-10));
}

TEST_CASE("second variation: general formula, rewrite, and the fd oracle") {
    const auto patch = catalog_patch("halfsphere-lag");
    const NormalField f = const_e4();
    const Family fam = exp_family(*patch, f);
    const double fd = area_second_difference(*patch, fam, 32);
    CHECK(fd == doctest::Approx(-4.0 * kPi).epsilon(1e-4));

    const GeneralSecondVariation gv =
        second_variation_general(*patch, f, fam, 32, 64);
    CHECK(gv.gradient == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(gv.shape == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(gv.curvature == doctest::Approx(4.0 * kPi).epsilon(1e-6));
    CHECK(std::abs(gv.boundary) < 1e-6);
    CHECK(gv.value == doctest::Approx(fd).epsilon(1e-3));

    const NkSecondVariation nk = second_variation_nk(*patch, f, 32);
    CHECK(nk.half_d == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(nk.value == doctest::Approx(-4.0 * kPi).epsilon(1e-4));
}

TEST_CASE("pointwise identities hold in the interior, boundary identity at the edge") {
    const auto patch = catalog_patch("halfsphere-lag");
    const PatchField pf = as_patch_field(*patch, damped_e5());
    for (double s : {0.9, 3.8}) {
        for (double t : {0.25, 0.8}) {
            CHECK(curvature_exchange_residual(*patch, s, t, pf) < 1e-5);
            CHECK(bochner_identity_residual(*patch, s, t, pf) < 1e-4);
        }
    }
    const Family fam = exp_family(*patch, damped_e5());
    CHECK(boundary_compatibility_residual(*patch, fam, pf, 0.77) < 1e-4);

    // non-admissible control: boundary value cos(s) e4 + sin(s) e5
    NormalField bad{"p1*e4+p2*e5", [](const Vec7& q) {
                        Vec7 v;
                        v[3] = q.c[0];
                        v[4] = q.c[1];
                        return v;
                    }};
    const Family bfam = exp_family(*patch, bad);
    const PatchField bpf = as_patch_field(*patch, bad);
    CHECK(boundary_compatibility_residual(*patch, bfam, bpf, 0.77) > 0.5);
}

TEST_CASE("Stokes pairing of the alpha form") {
    const auto patch = catalog_patch("halfsphere-lag");
    const StokesCheck st = alpha_stokes(*patch, damped_e5(), 32, 128);
    CHECK(std::abs(st.interior - st.boundary) < 1e-3);
}

TEST_CASE("non-minimal base surfaces are refused") {
    const auto cmc = catalog_patch("small-cmc");
    CHECK_THROWS_AS(second_variation_nk(*cmc, const_e4(), 16),
                    PreconditionError);
    const NormalField f = const_e4();
    const Family fam = exp_family(*cmc, f);
    CHECK_THROWS_AS(second_variation_general(*cmc, f, fam, 16, 16),
                    PreconditionError);
}
