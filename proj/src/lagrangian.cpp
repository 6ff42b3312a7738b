#include "nklab/lagrangian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "nklab/errors.hpp"
#include "nklab/octonion.hpp"

namespace nklab {

CoassociativeSearchResult find_coassociative_plane(double tol) {
    int tested = 0;
    for (int i = 2; i < 7; ++i) {
        for (int j = i + 1; j < 7; ++j) {
            ++tested;
            std::array<Vec7, 4> basis = {basis_vec(0), basis_vec(1), basis_vec(i),
                                         basis_vec(j)};
            const double resid = coassociative_residual(basis);
            if (resid < tol) {
                return CoassociativeSearchResult{{0, 1, i, j}, resid, tested};
            }
        }
    }
    throw SamplingError(
        "no coassociative coordinate 4-plane through e1, e2 found");
}

LagrangianPatch::LagrangianPatch(const std::array<int, 4>& axes) : axes_(axes) {
    for (int a : axes_) {
        if (a < 0 || a >= 7) throw PreconditionError("axis index out of range");
    }
}

std::string LagrangianPatch::id() const {
    std::ostringstream os;
    os << "link-s3-span";
    for (int a : axes_) os << "-e" << (a + 1);
    return os.str();
}

Vec7 LagrangianPatch::embed(double a, double b, double c) const {
    Vec7 q{};
    q.c[axes_[0]] = std::cos(a);
    q.c[axes_[1]] = std::sin(a) * std::cos(b);
    q.c[axes_[2]] = std::sin(a) * std::sin(b) * std::cos(c);
    q.c[axes_[3]] = std::sin(a) * std::sin(b) * std::sin(c);
    return q;
}

std::array<Vec7, 4> LagrangianPatch::embed_jet1(double a, double b,
                                                double c) const {
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cc = std::cos(c), sc = std::sin(c);
    Vec7 v{}, da{}, db{}, dc{};
    v.c[axes_[0]] = ca;
    v.c[axes_[1]] = sa * cb;
    v.c[axes_[2]] = sa * sb * cc;
    v.c[axes_[3]] = sa * sb * sc;
    da.c[axes_[0]] = -sa;
    da.c[axes_[1]] = ca * cb;
    da.c[axes_[2]] = ca * sb * cc;
    da.c[axes_[3]] = ca * sb * sc;
    db.c[axes_[1]] = -sa * sb;
    db.c[axes_[2]] = sa * cb * cc;
    db.c[axes_[3]] = sa * cb * sc;
    dc.c[axes_[2]] = -sa * sb * sc;
    dc.c[axes_[3]] = sa * sb * cc;
    return {v, da, db, dc};
}

namespace {

Vec7 project_to_span(const std::array<int, 4>& axes, const Vec7& q) {
    Vec7 p{};
    for (int a : axes) p.c[a] = q.c[a];
    return p;
}

}  // namespace

bool LagrangianPatch::contains(const Vec7& q, double tol) const {
    const Vec7 p = project_to_span(axes_, q);
    return norm(q - p) <= tol && std::abs(norm(q) - 1.0) <= tol;
}

Vec7 LagrangianPatch::closest_point(const Vec7& q) const {
    Vec7 x = q;
    for (int iter = 0; iter < 50; ++iter) {
        const Vec7 p = project_to_span(axes_, x);
        const double n = norm(p);
        if (n < 1e-8) {
            throw DegenerateInputError(
                "closest-point projection degenerate: point nearly orthogonal "
                "to the Lagrangian plane");
        }
        const Vec7 next = (1.0 / n) * p;
        const double step = norm(next - x);
        x = next;
        if (step < 1e-10) return x;
    }
    throw AccuracyError("closest-point iteration did not converge");
}

std::array<Vec7, 3> LagrangianPatch::tangent_basis(const Vec7& q) const {
    if (!contains(q, 1e-8)) {
        throw PreconditionError("tangent_basis: point is not on the Lagrangian");
    }
    std::array<Vec7, 3> out{};
    int got = 0;
    for (int a : axes_) {
        Vec7 w = basis_vec(a) - dot(basis_vec(a), q) * q;
        for (int k = 0; k < got; ++k) w = w - dot(w, out[k]) * out[k];
        const double n = norm(w);
        if (n < 0.3) continue;
        out[got++] = (1.0 / n) * w;
        if (got == 3) break;
    }
    if (got != 3) {
        throw DegenerateInputError("tangent_basis: could not complete a frame");
    }
    return out;
}

double LagrangianPatch::omega_residual_at(const Vec7& q) const {
    const SpherePoint p(q);
    const auto tb = tangent_basis(q);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            worst = std::max(worst, std::abs(omega(p, tb[i], tb[j])));
        }
    }
    return worst;
}

double LagrangianPatch::omega_residual(int samples, Rng& rng) const {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Vec7 raw{};
        for (int a : axes_) raw.c[a] = rng.normal();
        const double n = norm(raw);
        if (n < 1e-6) {
            --k;
            continue;
        }
        worst = std::max(worst, omega_residual_at((1.0 / n) * raw));
    }
    return worst;
}

double LagrangianPatch::tangent_distance(const Vec7& q, const Vec7& v) const {
    const auto tb = tangent_basis(q);
    Vec7 rest = v;
    for (const Vec7& b : tb) rest = rest - dot(rest, b) * b;
    // remove any radial component as well: tangency is judged inside T_q S^6
    rest = rest - dot(rest, q) * q;
    return norm(rest);
}

std::vector<Vec7> subspace_intersection(const std::vector<Vec7>& a_basis,
                                        const std::vector<Vec7>& b_basis,
                                        double tol) {
    auto projector = [](const std::vector<Vec7>& basis) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(7, basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            for (int i = 0; i < 7; ++i) m(i, static_cast<int>(k)) = basis[k].c[i];
        }
        // orthonormalize columns, then P = Q Q^T
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        Eigen::MatrixXd q =
            qr.householderQ() * Eigen::MatrixXd::Identity(7, m.cols());
        return Eigen::MatrixXd(q * q.transpose());
    };
    const Eigen::MatrixXd pa = projector(a_basis);
    const Eigen::MatrixXd pb = projector(b_basis);
    const Eigen::MatrixXd composed = pa * pb * pa;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(composed);
    std::vector<Vec7> out;
    for (int k = 0; k < 7; ++k) {
        if (eig.eigenvalues()(k) > 1.0 - tol) {
            Vec7 v{};
            for (int i = 0; i < 7; ++i) v.c[i] = eig.eigenvectors()(i, k);
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace nklab
