#ifndef DEGENOP_CUTOFF_HPP
#define DEGENOP_CUTOFF_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "degenop/function_sample.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

namespace detail {

/// Rising transition cubic on (1/n, 2/n): 0 with zero slope at 1/n, 1 with
/// zero slope at 2/n.
inline double rising_cubic(int n, double x, int order) {
    double nn = static_cast<double>(n);
    double a = -2.0 * nn * nn * nn, b = 9.0 * nn * nn, c = -12.0 * nn, d = 5.0;
    switch (order) {
        case 0: return ((a * x + b) * x + c) * x + d;
        case 1: return (3.0 * a * x + 2.0 * b) * x + c;
        default: return 6.0 * a * x + 2.0 * b;
    }
}

/// Falling transition cubic on (1-2/n, 1-1/n): 1 with zero slope at 1-2/n,
/// 0 with zero slope at 1-1/n. Coefficients are the closed rational forms
/// in the interval endpoints A = 1-2/n and B = 1-1/n.
inline double falling_cubic(int n, double x, int order) {
    double A = 1.0 - 2.0 / n;
    double B = 1.0 - 1.0 / n;
    double den = -A * A * A + 3.0 * B * A * A - 3.0 * B * B * A + B * B * B;
    double a = 2.0 / den;
    double b = (-3.0 * A - 3.0 * B) / den;
    double c = 6.0 * A * B / den;
    double d = (B * B * B - 3.0 * B * B * A) / den;
    switch (order) {
        case 0: return ((a * x + b) * x + c) * x + d;
        case 1: return (3.0 * a * x + 2.0 * b) * x + c;
        default: return 6.0 * a * x + 2.0 * b;
    }
}

/// Boundary-style cutoff: 0 near both endpoints, 1 on the middle plateau,
/// C^1 cubic transitions. Supports any function away from {0, 1}.
inline double xi_boundary(int n, double x, int order) {
    double nn = static_cast<double>(n);
    if (x <= 1.0 / nn || x >= 1.0 - 1.0 / nn) return 0.0;
    if (x >= 2.0 / nn && x <= 1.0 - 2.0 / nn) return order == 0 ? 1.0 : 0.0;
    if (x < 2.0 / nn) return rising_cubic(n, x, order);
    return falling_cubic(n, x, order);
}

/// Window factor for an interior degeneracy point: 0 on [x0-1/n, x0+1/n],
/// 1 outside (x0-2/n, x0+2/n), mirrored rising transitions in between.
inline double window_factor(int n, double x, double x0, int order) {
    double nn = static_cast<double>(n);
    double d = std::abs(x - x0);
    if (d <= 1.0 / nn) return 0.0;
    if (d >= 2.0 / nn) return order == 0 ? 1.0 : 0.0;
    double v = rising_cubic(n, d, order);
    if (order == 1 && x < x0) v = -v;
    return v;
}

}  // namespace detail

/// The cutoff sequence used to truncate functions away from the excluded
/// points. For a boundary x0 this is the explicit piecewise cubic vanishing
/// near 0 and 1; for an interior x0 it is multiplied by a window that
/// additionally excludes (x0-2/n, x0+2/n) with the same transition shape.
/// C^1 everywhere; second derivatives jump at the junctions.
class CutoffFunction {
public:
    CutoffFunction(int n, double x0) : n_(n), x0_(x0) {
        if (n < 4) throw std::invalid_argument("CutoffFunction: index must be at least 4");
        if (!(x0 >= 0.0 && x0 <= 1.0))
            throw std::invalid_argument("CutoffFunction: x0 must lie in [0,1]");
    }

    int index() const { return n_; }
    double x0() const { return x0_; }
    bool interior() const { return x0_ > 0.0 && x0_ < 1.0; }

    double operator()(double x, int order = 0) const {
        if (order < 0 || order > 2)
            throw std::invalid_argument("CutoffFunction: only derivatives 0..2 are defined");
        double b = detail::xi_boundary(n_, x, order);
        if (!interior()) return b;
        if (order == 0) return b * detail::window_factor(n_, x, x0_, 0);
        double b0 = detail::xi_boundary(n_, x, 0);
        double b1 = detail::xi_boundary(n_, x, 1);
        double w0 = detail::window_factor(n_, x, x0_, 0);
        double w1 = detail::window_factor(n_, x, x0_, 1);
        if (order == 1) return b1 * w0 + b0 * w1;
        double b2 = detail::xi_boundary(n_, x, 2);
        double w2 = detail::window_factor(n_, x, x0_, 2);
        return b2 * w0 + 2.0 * b1 * w1 + b0 * w2;
    }

    /// Junction abscissae where the transition cubics begin or end.
    std::vector<double> junctions() const {
        double nn = static_cast<double>(n_);
        std::vector<double> j{1.0 / nn, 2.0 / nn, 1.0 - 2.0 / nn, 1.0 - 1.0 / nn};
        if (interior()) {
            j.push_back(x0_ - 2.0 / nn);
            j.push_back(x0_ - 1.0 / nn);
            j.push_back(x0_ + 1.0 / nn);
            j.push_back(x0_ + 2.0 / nn);
        }
        return j;
    }

private:
    int n_;
    double x0_;
};

/// Convenience evaluator matching the sequence definition.
inline double xi(int n, double x, double x0) { return CutoffFunction(n, x0)(x, 0); }

/// Truncation errors of v_n = xi_n * v against v: the squared weighted L^2
/// distance and the squared L^2 distance of second derivatives, computed
/// with the exact product rule for (xi v)''. Quadrature cells are aligned
/// to the cutoff junctions so no Gauss node straddles a jump of xi''.
struct TruncationError {
    double weighted = 0.0;
    double second_derivative = 0.0;
};

inline TruncationError truncation_error(const FunctionSample& v, int n,
                                        const DegeneracyProfile& profile,
                                        const QuadratureScheme& scheme) {
    if (v.max_order() < 2)
        throw std::invalid_argument("truncation_error: v needs two derivatives");
    CutoffFunction cut(n, profile.x0());
    QuadratureScheme aligned = refine_with_breakpoints(scheme, cut.junctions());

    TruncationError err;
    err.weighted = integrate_weighted(
        [&](double x) {
            double g = (cut(x, 0) - 1.0) * v(x);
            return g * g;
        },
        profile, aligned);
    err.second_derivative = integrate(
        [&](double x) {
            double g = (cut(x, 0) - 1.0) * v(x, 2) + 2.0 * cut(x, 1) * v(x, 1) +
                       cut(x, 2) * v(x);
            return g * g;
        },
        aligned);
    return err;
}

}  // namespace degenop

#endif
