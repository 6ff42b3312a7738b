#include <atomic>

#include "nklab/errors.hpp"
#include "nklab/kernels.hpp"

namespace nklab::kern {

namespace {

Backend detect() {
    return avx2::available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

}  // namespace

Backend active_backend() { return current().load(); }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2::available())
        throw PreconditionError("AVX2 backend requested but not supported");
    current().store(b);
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

double weighted_sum(const double* w, const double* f, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::weighted_sum(w, f, n)
                                             : scalar::weighted_sum(w, f, n);
}

double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n) {
    return active_backend() == Backend::avx2
               ? avx2::weighted_dot(w, a, b, n)
               : scalar::weighted_dot(w, a, b, n);
}

double dot(const double* a, const double* b, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::dot(a, b, n)
                                             : scalar::dot(a, b, n);
}

double max_abs(const double* a, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::max_abs(a, n)
                                             : scalar::max_abs(a, n);
}

void batch_dot7(const Soa7View& x, const Soa7View& y, double* out) {
    if (active_backend() == Backend::avx2)
        avx2::batch_dot7(x, y, out);
    else
        scalar::batch_dot7(x, y, out);
}

void batch_cross7(const CrossTriples& t, const Soa7View& x, const Soa7View& y,
                  const Soa7MutView& out) {
    if (active_backend() == Backend::avx2)
        avx2::batch_cross7(t, x, y, out);
    else
        scalar::batch_cross7(t, x, y, out);
}

void batch_axpy7(double alpha, const Soa7View& x, const Soa7MutView& y) {
    if (active_backend() == Backend::avx2)
        avx2::batch_axpy7(alpha, x, y);
    else
        scalar::batch_axpy7(alpha, x, y);
}

}  // namespace nklab::kern
