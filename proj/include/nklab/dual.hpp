#pragma once

#include <cmath>

namespace nklab {

/// Two-variable second-order jet: tracks value, first derivatives (ds, dt) and
/// second derivatives (dss, dst, dtt) through arithmetic.  Surface patches are
/// written against this type so their 2-jets are computed exactly (to rounding)
/// instead of by finite differences.
struct Jet2 {
    double v = 0.0;   ///< value
    double s = 0.0;   ///< d/ds
    double t = 0.0;   ///< d/dt
    double ss = 0.0;  ///< d2/ds2
    double st = 0.0;  ///< d2/dsdt
    double tt = 0.0;  ///< d2/dt2

    Jet2() = default;
    Jet2(double value) : v(value) {}
    Jet2(double value, double ds, double dt) : v(value), s(ds), t(dt) {}

    static Jet2 var_s(double value) { return Jet2(value, 1.0, 0.0); }
    static Jet2 var_t(double value) { return Jet2(value, 0.0, 1.0); }

    Jet2 operator-() const {
        Jet2 r;
        r.v = -v; r.s = -s; r.t = -t; r.ss = -ss; r.st = -st; r.tt = -tt;
        return r;
    }

    Jet2& operator+=(const Jet2& o) {
        v += o.v; s += o.s; t += o.t; ss += o.ss; st += o.st; tt += o.tt;
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        v -= o.v; s -= o.s; t -= o.t; ss -= o.ss; st -= o.st; tt -= o.tt;
        return *this;
    }
    Jet2& operator*=(const Jet2& o) {
        // Leibniz rule through second order; order of updates keeps the
        // pre-multiplication first derivatives available for the cross terms.
        const double rss = ss * o.v + 2.0 * s * o.s + v * o.ss;
        const double rst = st * o.v + s * o.t + t * o.s + v * o.st;
        const double rtt = tt * o.v + 2.0 * t * o.t + v * o.tt;
        const double rs = s * o.v + v * o.s;
        const double rt = t * o.v + v * o.t;
        v *= o.v;
        s = rs; t = rt; ss = rss; st = rst; tt = rtt;
        return *this;
    }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
};

/// Composition with a scalar function given value f, f', f'' at x.v.
inline Jet2 jet_compose(const Jet2& x, double f, double fp, double fpp) {
    Jet2 r;
    r.v = f;
    r.s = fp * x.s;
    r.t = fp * x.t;
    r.ss = fpp * x.s * x.s + fp * x.ss;
    r.st = fpp * x.s * x.t + fp * x.st;
    r.tt = fpp * x.t * x.t + fp * x.tt;
    return r;
}

inline Jet2 sin(const Jet2& x) {
    const double sv = std::sin(x.v), cv = std::cos(x.v);
    return jet_compose(x, sv, cv, -sv);
}
inline Jet2 cos(const Jet2& x) {
    const double sv = std::sin(x.v), cv = std::cos(x.v);
    return jet_compose(x, cv, -sv, -cv);
}
inline Jet2 sqrt(const Jet2& x) {
    const double r = std::sqrt(x.v);
    return jet_compose(x, r, 0.5 / r, -0.25 / (r * x.v));
}
inline Jet2 exp(const Jet2& x) {
    const double e = std::exp(x.v);
    return jet_compose(x, e, e, e);
}

}  // namespace nklab
