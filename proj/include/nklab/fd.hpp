#pragma once

#include <functional>

namespace nklab {

/// Finite-difference stencils used wherever a quantity is re-derived along an
/// independent route.  Steps are chosen per call site: 1e-3 for smooth field
/// derivatives (5-point, truncation ~h^4), 1e-4 for exterior-derivative
/// residual checks, 1e-3 for second differences of analytic families.
namespace fd {

/// 3-point central first derivative, O(h^2).
template <class F>
double d1_central3(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// 5-point central first derivative, O(h^4).
template <class F>
double d1_central5(F&& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
           (12.0 * h);
}

/// 3-point central second derivative, O(h^2).
template <class F>
double d2_central3(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// 5-point central second derivative, O(h^4).
template <class F>
double d2_central5(F&& f, double x, double h) {
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2.0 * h)) /
           (12.0 * h * h);
}

}  // namespace fd

}  // namespace nklab
