#pragma once

#include <cstddef>
#include <string>

namespace nklab::kern {

/// Structure-of-arrays view of a batch of 7-vectors: component k of element i
/// lives at c[k][i].  The layout keeps inner loops unit-stride for SIMD.
struct Soa7View {
    const double* c[7];
    std::size_t n = 0;
};

struct Soa7MutView {
    double* c[7];
    std::size_t n = 0;
};

/// Cross-product structure constants as 7 oriented triples (a, b, c, sign):
/// e_a x e_b = sign * e_c together with the two cyclic rotations.
struct CrossTriples {
    int a[7];
    int b[7];
    int c[7];
    double s[7];
};

enum class Backend { scalar, avx2 };

/// Backend chosen at startup from CPU capabilities (or overridden).
Backend active_backend();
/// Force a backend; throws if the requested backend is unsupported on this
/// machine.  Intended for equivalence tests and benchmarking.
void force_backend(Backend b);
std::string backend_name(Backend b);

/// sum_i w[i] * f[i], compensated (Neumaier) accumulation.
double weighted_sum(const double* w, const double* f, std::size_t n);
/// sum_i w[i] * a[i] * b[i], compensated accumulation.
double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n);
/// sum_i a[i] * b[i], compensated accumulation.
double dot(const double* a, const double* b, std::size_t n);
/// max_i |a[i]|.
double max_abs(const double* a, std::size_t n);

/// out[i] = <x_i, y_i> over the 7 components.
void batch_dot7(const Soa7View& x, const Soa7View& y, double* out);
/// out_i = x_i cross y_i with the supplied structure constants.
void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out);
/// y_i += alpha * x_i (all 7 components).
void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y);

/// Reference (scalar) implementations, callable directly by tests.
namespace scalar {
double weighted_sum(const double* w, const double* f, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* a, std::size_t n);
void batch_dot7(const Soa7View& x, const Soa7View& y, double* out);
void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out);
void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y);
}  // namespace scalar

/// AVX2 implementations; only valid to call when avx2_available().
namespace avx2 {
bool available();
double weighted_sum(const double* w, const double* f, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* a, std::size_t n);
void batch_dot7(const Soa7View& x, const Soa7View& y, double* out);
void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out);
void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y);
}  // namespace avx2

}  // namespace nklab::kern
