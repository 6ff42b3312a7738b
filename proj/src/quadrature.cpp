#include "nklab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "nklab/errors.hpp"

namespace nklab {

namespace {

GaussLegendre compute_rule(std::size_t n) {
    if (n < 2) throw PreconditionError("Gauss-Legendre rule needs n >= 2");
    GaussLegendre rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double pi = std::acos(-1.0);
    // Nodes are roots of P_n; start from the Chebyshev-like estimate and
    // refine by Newton using the three-term recurrence for P_n and P'_n.
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * double(k) - 1.0) * x * p1 -
                                   (double(k) - 1.0) * p0) /
                                  double(k);
                p0 = p1;
                p1 = pk;
            }
            pp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    // Ascending node order for a fixed, documented accumulation order.
    for (std::size_t i = 0; i < n / 2; ++i) {
        std::swap(rule.x[i], rule.x[n - 1 - i]);
        std::swap(rule.w[i], rule.w[n - 1 - i]);
    }
    return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

GaussLegendre gauss_legendre_on(std::size_t n, double a, double b) {
    const GaussLegendre& base = gauss_legendre(n);
    GaussLegendre out;
    out.x.resize(n);
    out.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = mid + half * base.x[i];
        out.w[i] = half * base.w[i];
    }
    return out;
}

Grid2D::Grid2D(std::size_t n_s, std::size_t n_t, double s0, double s1,
               double t0, double t1)
    : ns(n_s), nt(n_t) {
    GaussLegendre gs = gauss_legendre_on(n_s, s0, s1);
    GaussLegendre gt = gauss_legendre_on(n_t, t0, t1);
    s = std::move(gs.x);
    ws = std::move(gs.w);
    t = std::move(gt.x);
    wt = std::move(gt.w);
}

}  // namespace nklab
