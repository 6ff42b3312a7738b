#include <cmath>

#include "nklab/kernels.hpp"

namespace nklab::kern::scalar {

namespace {

struct Neumaier {
    double s = 0.0, comp = 0.0;
    inline void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    inline double value() const { return s + comp; }
};

}  // namespace

double weighted_sum(const double* w, const double* f, std::size_t n) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * f[i]);
    return acc.value();
}

double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * a[i] * b[i]);
    return acc.value();
}

double dot(const double* a, const double* b, std::size_t n) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
    return acc.value();
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

void batch_dot7(const Soa7View& x, const Soa7View& y, double* out) {
    for (std::size_t i = 0; i < x.n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 7; ++k) acc += x.c[k][i] * y.c[k][i];
        out[i] = acc;
    }
}

void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out) {
    for (int k = 0; k < 7; ++k)
        for (std::size_t i = 0; i < x.n; ++i) out.c[k][i] = 0.0;
    for (int m = 0; m < 7; ++m) {
        const int a = t.a[m], b = t.b[m], c = t.c[m];
        const double s = t.s[m];
        for (std::size_t i = 0; i < x.n; ++i) {
            out.c[c][i] += s * (x.c[a][i] * y.c[b][i] - x.c[b][i] * y.c[a][i]);
            out.c[a][i] += s * (x.c[b][i] * y.c[c][i] - x.c[c][i] * y.c[b][i]);
            out.c[b][i] += s * (x.c[c][i] * y.c[a][i] - x.c[a][i] * y.c[c][i]);
        }
    }
}

void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y) {
    for (int k = 0; k < 7; ++k)
        for (std::size_t i = 0; i < x.n; ++i) y.c[k][i] += alpha * x.c[k][i];
}

}  // namespace nklab::kern::scalar
