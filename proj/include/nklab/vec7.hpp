#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace nklab {

/// 7-component vector over an arbitrary scalar type.  The scalar may be double
/// or one of the automatic-differentiation jet types, so geometric maps written
/// against V7<S> can be differentiated exactly.
template <class S>
struct V7 {
    std::array<S, 7> c{};

    V7() = default;

    S& operator[](std::size_t i) { return c[i]; }
    const S& operator[](std::size_t i) const { return c[i]; }

    V7& operator+=(const V7& o) {
        for (std::size_t i = 0; i < 7; ++i) c[i] += o.c[i];
        return *this;
    }
    V7& operator-=(const V7& o) {
        for (std::size_t i = 0; i < 7; ++i) c[i] -= o.c[i];
        return *this;
    }
    V7& operator*=(const S& a) {
        for (std::size_t i = 0; i < 7; ++i) c[i] = c[i] * a;
        return *this;
    }

    friend V7 operator+(V7 a, const V7& b) { return a += b; }
    friend V7 operator-(V7 a, const V7& b) { return a -= b; }
    friend V7 operator*(V7 a, const S& s) { return a *= s; }
    friend V7 operator*(const S& s, V7 a) { return a *= s; }
    friend V7 operator-(V7 a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
};

template <class S>
inline S dot(const V7<S>& a, const V7<S>& b) {
    S acc = a.c[0] * b.c[0];
    for (std::size_t i = 1; i < 7; ++i) acc += a.c[i] * b.c[i];
    return acc;
}

template <class S>
inline S norm2(const V7<S>& a) {
    return dot(a, a);
}

using Vec7 = V7<double>;

inline double norm(const Vec7& a) { return std::sqrt(norm2(a)); }

inline Vec7 basis_vec(std::size_t i) {
    Vec7 v;
    v[i] = 1.0;
    return v;
}

/// Unit vector in the direction of a (caller must ensure a != 0).
inline Vec7 normalized(const Vec7& a) {
    const double n = norm(a);
    Vec7 out = a;
    for (auto& x : out.c) x /= n;
    return out;
}

}  // namespace nklab
