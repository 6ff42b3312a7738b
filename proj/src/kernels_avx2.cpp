// AVX2+FMA variants of the batched kernels.  This translation unit is the only
// one compiled with -mavx2 -mfma; callers reach it through the runtime
// dispatcher, which verifies CPU support first.

#include <immintrin.h>

#include <cmath>

#include "nklab/kernels.hpp"

namespace nklab::kern::avx2 {

bool available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(kSignMask, v); }

/// 4-lane Neumaier accumulator; lanes are reduced in fixed order at the end so
/// the result is deterministic for a given n.
struct VNeumaier {
    __m256d s = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();

    inline void add(__m256d x) {
        const __m256d t = _mm256_add_pd(s, x);
        const __m256d mask = _mm256_cmp_pd(vabs(s), vabs(x), _CMP_GE_OQ);
        const __m256d big = _mm256_blendv_pd(x, s, mask);
        const __m256d small = _mm256_blendv_pd(s, x, mask);
        comp = _mm256_add_pd(
            comp, _mm256_add_pd(_mm256_sub_pd(big, t), small));
        s = t;
    }

    inline double reduce() const {
        alignas(32) double sl[4], cl[4];
        _mm256_store_pd(sl, s);
        _mm256_store_pd(cl, comp);
        double total = 0.0, comp_total = 0.0;
        for (int l = 0; l < 4; ++l) {
            total += sl[l];
            comp_total += cl[l];
        }
        return total + comp_total;
    }
};

struct ScalarNeumaier {
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
    VNeumaier acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i)));
    ScalarNeumaier tail;
    for (; i < n; ++i) tail.add(w[i] * f[i]);
    return acc.reduce() + tail.value();
}

double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n) {
    VNeumaier acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ab =
            _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), ab));
    }
    ScalarNeumaier tail;
    for (; i < n; ++i) tail.add(w[i] * a[i] * b[i]);
    return acc.reduce() + tail.value();
}

double dot(const double* a, const double* b, std::size_t n) {
    VNeumaier acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    ScalarNeumaier tail;
    for (; i < n; ++i) tail.add(a[i] * b[i]);
    return acc.reduce() + tail.value();
}

double max_abs(const double* a, std::size_t n) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vm = _mm256_max_pd(vm, vabs(_mm256_loadu_pd(a + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]),
                        std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

void batch_dot7(const Soa7View& x, const Soa7View& y, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= x.n; i += 4) {
        __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(x.c[0] + i),
                                    _mm256_loadu_pd(y.c[0] + i));
        for (int k = 1; k < 7; ++k)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(x.c[k] + i),
                                  _mm256_loadu_pd(y.c[k] + i), acc);
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < x.n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 7; ++k) acc += x.c[k][i] * y.c[k][i];
        out[i] = acc;
    }
}

void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out) {
    for (int k = 0; k < 7; ++k) {
        std::size_t i = 0;
        for (; i + 4 <= x.n; i += 4)
            _mm256_storeu_pd(out.c[k] + i, _mm256_setzero_pd());
        for (; i < x.n; ++i) out.c[k][i] = 0.0;
    }
    for (int m = 0; m < 7; ++m) {
        const int ia = t.a[m], ib = t.b[m], ic = t.c[m];
        const __m256d vs = _mm256_set1_pd(t.s[m]);
        std::size_t i = 0;
        for (; i + 4 <= x.n; i += 4) {
            const __m256d xa = _mm256_loadu_pd(x.c[ia] + i);
            const __m256d xb = _mm256_loadu_pd(x.c[ib] + i);
            const __m256d xc = _mm256_loadu_pd(x.c[ic] + i);
            const __m256d ya = _mm256_loadu_pd(y.c[ia] + i);
            const __m256d yb = _mm256_loadu_pd(y.c[ib] + i);
            const __m256d yc = _mm256_loadu_pd(y.c[ic] + i);
            __m256d oc = _mm256_loadu_pd(out.c[ic] + i);
            __m256d oa = _mm256_loadu_pd(out.c[ia] + i);
            __m256d ob = _mm256_loadu_pd(out.c[ib] + i);
            oc = _mm256_fmadd_pd(
                vs, _mm256_fmsub_pd(xa, yb, _mm256_mul_pd(xb, ya)), oc);
            oa = _mm256_fmadd_pd(
                vs, _mm256_fmsub_pd(xb, yc, _mm256_mul_pd(xc, yb)), oa);
            ob = _mm256_fmadd_pd(
                vs, _mm256_fmsub_pd(xc, ya, _mm256_mul_pd(xa, yc)), ob);
            _mm256_storeu_pd(out.c[ic] + i, oc);
            _mm256_storeu_pd(out.c[ia] + i, oa);
            _mm256_storeu_pd(out.c[ib] + i, ob);
        }
        const double s = t.s[m];
        for (; i < x.n; ++i) {
            out.c[ic][i] +=
                s * (x.c[ia][i] * y.c[ib][i] - x.c[ib][i] * y.c[ia][i]);
            out.c[ia][i] +=
                s * (x.c[ib][i] * y.c[ic][i] - x.c[ic][i] * y.c[ib][i]);
            out.c[ib][i] +=
                s * (x.c[ic][i] * y.c[ia][i] - x.c[ia][i] * y.c[ic][i]);
        }
    }
}

void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y) {
    const __m256d va = _mm256_set1_pd(alpha);
    for (int k = 0; k < 7; ++k) {
        std::size_t i = 0;
        for (; i + 4 <= x.n; i += 4) {
            const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x.c[k] + i),
                                              _mm256_loadu_pd(y.c[k] + i));
            _mm256_storeu_pd(y.c[k] + i, r);
        }
        for (; i < x.n; ++i) y.c[k][i] += alpha * x.c[k][i];
    }
}

}  // namespace nklab::kern::avx2
