#ifndef DEGENOP_SPACES_HPP
#define DEGENOP_SPACES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "degenop/function_sample.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

/// sqrt of the 1/a-weighted L^2 integral of u^2. Divergence propagates.
inline double weighted_l2_norm(const FunctionSample& u, const DegeneracyProfile& profile,
                               const QuadratureScheme& scheme) {
    double v = integrate_weighted([&](double x) { double t = u(x); return t * t; }, profile,
                                  scheme);
    return std::sqrt(std::max(v, 0.0));
}

/// sqrt( ||u||_{1/a}^2 + ||u^(i)||_{L^2}^2 ), the graph-type norm of order i.
inline double sobolev_norm(const FunctionSample& u, int i, const DegeneracyProfile& profile,
                           const QuadratureScheme& scheme) {
    double w = weighted_l2_norm(u, profile, scheme);
    double d = integrate([&](double x) { double t = u(x, i); return t * t; }, scheme);
    return std::sqrt(w * w + d);
}

/// [ int w^2/a ] / [ int (w')^2 ]. Finite for admissible w; the classical
/// bound for a = |x-x0|^2 and w vanishing at x0 is 4.
inline double hardy_ratio(const FunctionSample& w, const DegeneracyProfile& profile,
                          const QuadratureScheme& scheme) {
    double den = integrate([&](double x) { double t = w(x, 1); return t * t; }, scheme);
    if (den < 1e-300)
        throw std::domain_error("hardy_ratio: undefined for a function with vanishing derivative");
    double num = integrate_weighted([&](double x) { double t = w(x); return t * t; }, profile,
                                    scheme);
    return num / den;
}

/// [ int (u^(i))^2/a ] / [ int (u^(i+1))^2 ]. Divergence of the numerator
/// signals u^(i)(x0) != 0.
inline double higher_hardy_ratio(const FunctionSample& u, int i, const DegeneracyProfile& profile,
                                 const QuadratureScheme& scheme) {
    double den = integrate([&](double x) { double t = u(x, i + 1); return t * t; }, scheme);
    if (den < 1e-300)
        throw std::domain_error("higher_hardy_ratio: undefined for vanishing denominator");
    double num = integrate_weighted([&](double x) { double t = u(x, i); return t * t; }, profile,
                                    scheme);
    return num / den;
}

/// One-sided magnitudes of a * u^(i) approaching x0, with a fitted log-log
/// decay exponent. Diagnostic for the boundary-trace conditions
/// (a u^(i))(x0) = 0 that characterize the operator domain.
struct TraceSequence {
    std::vector<double> deltas;
    std::vector<double> left;   // |a u^(i)| at x0 - delta; empty when x0 = 0
    std::vector<double> right;  // |a u^(i)| at x0 + delta; empty when x0 = 1
    double fitted_exponent = 0.0;
    double terminal_ratio = 0.0;  // last magnitude relative to the trace's sup scale
    double scale = 0.0;
};

inline TraceSequence boundary_trace_sequence(const FunctionSample& u, int i,
                                             const DegeneracyProfile& profile,
                                             const std::vector<double>& deltas) {
    const double x0 = profile.x0();
    TraceSequence out;
    out.deltas = deltas;
    for (std::size_t k = 1; k < deltas.size(); ++k)
        if (!(deltas[k] < deltas[k - 1]))
            throw std::invalid_argument("boundary_trace_sequence: deltas must decrease");
    const bool has_left = x0 > 0.0;
    const bool has_right = x0 < 1.0;
    for (double d : deltas) {
        if (has_left && x0 - d >= 0.0) {
            double x = x0 - d;
            out.left.push_back(std::abs(profile.a(x) * u(x, i)));
        }
        if (has_right && x0 + d <= 1.0) {
            double x = x0 + d;
            out.right.push_back(std::abs(profile.a(x) * u(x, i)));
        }
    }

    // sup of |a u^(i)| on a coarse grid, the scale traces are judged against
    double scale = 0.0;
    for (int g = 0; g <= 200; ++g) {
        double x = g / 200.0;
        if (std::abs(x - x0) < 1e-6) continue;
        scale = std::max(scale, std::abs(profile.a(x) * u(x, i)));
    }
    out.scale = scale;

    // combined per-delta magnitude, then a least-squares slope in log-log
    std::vector<double> mag;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        double m = 0.0;
        if (k < out.left.size()) m = std::max(m, out.left[k]);
        if (k < out.right.size()) m = std::max(m, out.right[k]);
        mag.push_back(m);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        if (mag[k] <= 0.0) continue;
        double lx = std::log(deltas[k]);
        double ly = std::log(mag[k]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n >= 2) {
        out.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    } else {
        // trace is identically zero along the sequence: vanishing is immediate
        out.fitted_exponent = std::numeric_limits<double>::infinity();
    }
    out.terminal_ratio = scale > 0.0 ? mag.back() / scale : 0.0;
    return out;
}

/// Default delta sequence 2^-k, k = 4..14, restricted to the domain.
inline std::vector<double> default_trace_deltas(double x0, int k_lo = 4, int k_hi = 14) {
    double span = (x0 > 0.0 && x0 < 1.0) ? std::min(x0, 1.0 - x0) : 1.0;
    std::vector<double> d;
    for (int k = k_lo; k <= k_hi; ++k) {
        double v = std::pow(2.0, -k);
        if (v < span) d.push_back(v);
    }
    if (d.size() < 3) throw std::invalid_argument("default_trace_deltas: x0 too close to the boundary");
    return d;
}

}  // namespace degenop

#endif
