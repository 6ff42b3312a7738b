#include "nklab/index_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nklab/errors.hpp"
#include "nklab/quadrature.hpp"
#include "nklab/sphere.hpp"

namespace nklab {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = m[i][j];
    }
    return out;
}

void require_gram_pd(const Eigen::MatrixXd& gram, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.eigenvalues()(0) <= tol) {
        throw PreconditionError(
            "basis Gram matrix is not positive definite; the generators are "
            "numerically dependent");
    }
}

}  // namespace

double QuadFormMatrix::symmetry_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            worst = std::max(worst, std::abs(q[i][j] - q[j][i]));
        }
    }
    return worst;
}

double QuadFormMatrix::q_max() const {
    double worst = 0.0;
    for (const auto& row : q) {
        for (double v : row) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

QuadFormMatrix assemble_quadratic_form(const SurfacePatch& patch,
                                       const LagrangianPatch& lag,
                                       const BasisSpec& basis,
                                       std::size_t nodes, double h,
                                       double admissibility_tol) {
    const std::size_t n = basis.fields.size();
    if (n == 0) throw PreconditionError("empty basis");
    for (const NormalField& f : basis.fields) {
        if (boundary_tangency_residual(patch, lag, f) > admissibility_tol) {
            throw PreconditionError("basis field '" + f.name +
                                    "' is not admissible at the boundary");
        }
    }

    const Domain dom = patch.domain();
    const Grid2D grid(nodes, nodes, dom.s0, dom.s1, dom.t0, dom.t1);
    const std::size_t m = grid.size();

    // per-node, per-field caches of eta, D eta (both frame legs) and the
    // torsion pairing vector; all three are linear in the field
    std::vector<double> darea(m);
    std::vector<std::vector<Vec7>> eta(n), d1(n), d2(n), tor(n);
    for (std::size_t i = 0; i < n; ++i) {
        eta[i].resize(m);
        d1[i].resize(m);
        d2[i].resize(m);
        tor[i].resize(m);
    }
    std::vector<PatchField> pf;
    pf.reserve(n);
    for (const NormalField& f : basis.fields)
        pf.push_back(as_patch_field(patch, f));

    for (std::size_t k = 0; k < m; ++k) {
        const double s = grid.node_s(k), t = grid.node_t(k);
        const Jet2S j = patch.jets(s, t);
        const SpherePoint p(j.p);
        darea[k] = sqrt_g(j) * grid.weight(k);
        const Vec7 e1 = (1.0 / norm(j.us)) * j.us;
        for (std::size_t i = 0; i < n; ++i) {
            const PerpDerivs nd = nabla_perp_frame(patch, s, t, pf[i], h);
            eta[i][k] = pf[i](s, t);
            d1[i][k] = nd.d1 + almost_J(p, nd.d2);
            d2[i][k] = nd.d2 - almost_J(p, nd.d1);
            tor[i][k] = torsion_P(p, e1, almost_J(p, eta[i][k]));
        }
    }

    auto q_of = [&](const Vec7& et, const Vec7& da, const Vec7& db,
                    const Vec7& tv) {
        return 0.5 * (norm2(da) + norm2(db)) + dot(tv, da) -
               2.0 * kNkLambda * kNkLambda * norm2(et);
    };

    QuadFormMatrix out;
    out.nodes = nodes;
    out.q.assign(n, std::vector<double>(n, 0.0));
    out.gram.assign(n, std::vector<double>(n, 0.0));
    out.dgram.assign(n, std::vector<double>(n, 0.0));
    for (const NormalField& f : basis.fields) out.names.push_back(f.name);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            KahanSum qs, gs, ds;
            if (i == j) {
                for (std::size_t k = 0; k < m; ++k) {
                    qs.add(q_of(eta[i][k], d1[i][k], d2[i][k], tor[i][k]) *
                           darea[k]);
                    gs.add(dot(eta[i][k], eta[j][k]) * darea[k]);
                    ds.add((dot(d1[i][k], d1[j][k]) + dot(d2[i][k], d2[j][k])) *
                           darea[k]);
                }
            } else {
                for (std::size_t k = 0; k < m; ++k) {
                    const Vec7 ep = eta[i][k] + eta[j][k];
                    const Vec7 em = eta[i][k] - eta[j][k];
                    const double qp = q_of(ep, d1[i][k] + d1[j][k],
                                           d2[i][k] + d2[j][k],
                                           tor[i][k] + tor[j][k]);
                    const double qm = q_of(em, d1[i][k] - d1[j][k],
                                           d2[i][k] - d2[j][k],
                                           tor[i][k] - tor[j][k]);
                    qs.add(0.25 * (qp - qm) * darea[k]);
                    gs.add(dot(eta[i][k], eta[j][k]) * darea[k]);
                    ds.add((dot(d1[i][k], d1[j][k]) + dot(d2[i][k], d2[j][k])) *
                           darea[k]);
                }
            }
            out.q[i][j] = out.q[j][i] = qs.value();
            out.gram[i][j] = out.gram[j][i] = gs.value();
            out.dgram[i][j] = out.dgram[j][i] = ds.value();
        }
    }
    require_gram_pd(to_eigen(out.gram), basis.gram_tolerance);
    return out;
}

double default_eig_tol(const QuadFormMatrix& qf) {
    return 1e-6 * qf.q_max();
}

std::vector<double> generalized_spectrum(const QuadFormMatrix& qf) {
    const Eigen::MatrixXd q = to_eigen(qf.q);
    const Eigen::MatrixXd g = to_eigen(qf.gram);
    require_gram_pd(g, 0.0);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, g);
    std::vector<double> out(eig.eigenvalues().data(),
                            eig.eigenvalues().data() + qf.size());
    std::sort(out.begin(), out.end());
    return out;
}

int morse_index_lower_bound(const QuadFormMatrix& qf, double eig_tol) {
    if (qf.symmetry_residual() > 1e-8) {
        throw PreconditionError("quadratic form is not symmetric");
    }
    int count = 0;
    for (double ev : generalized_spectrum(qf)) {
        if (ev < -eig_tol) ++count;
    }
    return count;
}

std::vector<double> d_singular_values(const QuadFormMatrix& qf) {
    const Eigen::MatrixXd k = to_eigen(qf.dgram);
    const Eigen::MatrixXd g = to_eigen(qf.gram);
    require_gram_pd(g, 0.0);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, g);
    std::vector<double> out;
    for (int i = 0; i < eig.eigenvalues().size(); ++i) {
        out.push_back(std::sqrt(std::max(0.0, eig.eigenvalues()(i))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int d_kernel_dimension(const QuadFormMatrix& qf, double sv_tol) {
    int count = 0;
    for (double sv : d_singular_values(qf)) {
        if (sv < sv_tol) ++count;
    }
    return count;
}

int riemann_roch_expected(int chi, int maslov_normal) {
    return 2 * chi + maslov_normal;
}

std::string index_verdict(int negative_count, int maslov_total) {
    if (maslov_total <= 0) return "bound vacuous";
    if (negative_count >= maslov_total) {
        return "bound satisfied on the spanned subspace";
    }
    return "basis insufficiency rather than bound failure";
}

IndexReport verify_index_bound(const SurfacePatch& patch,
                               const LagrangianPatch& lag,
                               const BasisSpec& basis, std::size_t nodes,
                               int maslov_samples, double h) {
    if (!patch.has_boundary()) {
        throw PreconditionError(
            "index bound verification targets surfaces with boundary; the "
            "closed case is out of scope");
    }
    const QuadFormMatrix qf =
        assemble_quadratic_form(patch, lag, basis, nodes, h);
    IndexReport rep;
    rep.eigenvalues = generalized_spectrum(qf);
    rep.negative_count = morse_index_lower_bound(qf, default_eig_tol(qf));
    rep.d_svals = d_singular_values(qf);
    rep.kernel_dimension = d_kernel_dimension(qf);
    const MaslovDecomposition dec =
        maslov_decomposition_check(patch, lag, maslov_samples);
    rep.maslov_tangent = dec.tangent;
    rep.maslov_normal = dec.normal;
    rep.maslov_total = dec.full;
    rep.additivity = dec.additive;
    rep.rr_expected = riemann_roch_expected(1, dec.normal);
    rep.bound_satisfied = rep.negative_count >= rep.maslov_total;
    rep.verdict = index_verdict(rep.negative_count, rep.maslov_total);
    return rep;
}

}  // namespace nklab
