#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace nklab {

/// 1-D Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;  ///< nodes
    std::vector<double> w;  ///< weights
};

/// Nodes and weights of the n-point Gauss-Legendre rule, computed by Newton
/// iteration on P_n with the three-term recurrence and cached per n.
const GaussLegendre& gauss_legendre(std::size_t n);

/// 1-D rule mapped to [a, b].
GaussLegendre gauss_legendre_on(std::size_t n, double a, double b);

/// Tensor-product rule on the rectangle [s0,s1] x [t0,t1].  Node ordering is
/// row-major in (i_s, i_t), fixed so that compensated accumulation over the
/// grid is reproducible run to run.
struct Grid2D {
    std::vector<double> s, t;      ///< per-axis mapped nodes
    std::vector<double> ws, wt;    ///< per-axis mapped weights
    std::size_t ns = 0, nt = 0;

    Grid2D(std::size_t n_s, std::size_t n_t, double s0, double s1, double t0,
           double t1);

    std::size_t size() const { return ns * nt; }
    double node_s(std::size_t k) const { return s[k / nt]; }
    double node_t(std::size_t k) const { return t[k % nt]; }
    double weight(std::size_t k) const { return ws[k / nt] * wt[k % nt]; }
};

/// Neumaier-compensated accumulator; fixed insertion order makes sums
/// bit-reproducible for a given node count.
struct KahanSum {
    double s = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    double value() const { return s + comp; }
};

/// Integrate f(s, t) over the grid (f already includes any area element).
template <class F>
double integrate(const Grid2D& g, F&& f) {
    KahanSum acc;
    for (std::size_t k = 0; k < g.size(); ++k)
        acc.add(g.weight(k) * f(g.node_s(k), g.node_t(k)));
    return acc.value();
}

/// Integrate f(x) over [a, b] with an n-point rule.
template <class F>
double integrate_1d(std::size_t n, double a, double b, F&& f) {
    const GaussLegendre rule = gauss_legendre_on(n, a, b);
    KahanSum acc;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc.add(rule.w[i] * f(rule.x[i]));
    return acc.value();
}

}  // namespace nklab
