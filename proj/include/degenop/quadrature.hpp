#ifndef DEGENOP_QUADRATURE_HPP
#define DEGENOP_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "degenop/common.hpp"
#include "degenop/profile.hpp"

namespace degenop {

namespace detail {

/// Gauss-Legendre nodes and weights on (-1,1) by Newton iteration on the
/// Legendre recurrence. Symmetric pairs are filled together.
inline void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(q), 0.0);
    weights.assign(static_cast<std::size_t>(q), 0.0);
    const int half = (q + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double p_deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < q; ++k) {
                double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            p_deriv = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / p_deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(q - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * p_deriv * p_deriv);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(q - 1 - i)] = w;
    }
}

}  // namespace detail

/// Composite quadrature on [0,1] with cells geometrically graded toward the
/// degeneracy point x0. x0 is always a cell endpoint and never a node. The
/// two cells touching x0 carry a power-substituted Gauss rule (d = h s^4)
/// that absorbs integrable endpoint singularities |x-x0|^(-alpha); all other
/// cells carry plain Gauss-Legendre rules.
class QuadratureScheme {
public:
    struct Cell {
        double lo, hi;
        std::size_t first_node, node_count;
        bool touches_x0;
    };

    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double x0() const { return x0_; }
    int nodes_per_cell() const { return nodes_per_cell_; }
    double grading_exponent() const { return grading_exponent_; }

    /// Sum of one cell's rule applied to f.
    template <class F>
    double integrate_cell(std::size_t c, F&& f) const {
        const Cell& cell = cells_[c];
        double s = 0.0;
        for (std::size_t i = cell.first_node; i < cell.first_node + cell.node_count; ++i)
            s += weights_[i] * f(nodes_[i]);
        return s;
    }

    friend QuadratureScheme build_graded_mesh(double, double, int, int);
    friend QuadratureScheme refine_with_breakpoints(const QuadratureScheme&,
                                                    const std::vector<double>&);

private:
    std::vector<Cell> cells_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double x0_ = 0.0;
    int nodes_per_cell_ = 8;
    double grading_exponent_ = 1.0;

    // substitution exponent for the cells adjacent to x0
    static constexpr int kPower = 4;

    void add_cell(double lo, double hi, bool touches, const std::vector<double>& gn,
                  const std::vector<double>& gw) {
        Cell c{lo, hi, nodes_.size(), gn.size(), touches};
        const double len = hi - lo;
        if (!touches) {
            for (std::size_t i = 0; i < gn.size(); ++i) {
                nodes_.push_back(lo + 0.5 * len * (gn[i] + 1.0));
                weights_.push_back(0.5 * len * gw[i]);
            }
        } else {
            // distance from x0 grows like s^4; nodes are clamped away from x0
            const bool x0_left = std::abs(lo - x0_) <= std::abs(hi - x0_);
            for (std::size_t i = 0; i < gn.size(); ++i) {
                double s = 0.5 * (gn[i] + 1.0);  // in (0,1)
                double d = len * std::pow(s, kPower);
                d = std::max(d, limits::node_distance_floor);
                double w = 0.5 * gw[i] * len * kPower * std::pow(s, kPower - 1);
                nodes_.push_back(x0_left ? lo + d : hi - d);
                weights_.push_back(w);
            }
        }
        cells_.push_back(c);
    }
};

/// Builds the graded composite mesh: a uniform backbone of n_cells cells
/// with x0 snapped to a cell boundary, plus a geometric layer inside the
/// backbone cells adjacent to x0 with ratio 0.5^(1 + alpha_hint/2). The
/// layer descends until the substituted nodes of the innermost cell would
/// hit the representability floor, so 1/a is resolved as deeply as double
/// precision allows. The returned scheme usually has more cells than the
/// backbone parameter.
inline QuadratureScheme build_graded_mesh(double x0, double alpha_hint, int n_cells,
                                          int nodes_per_cell) {
    if (!(x0 >= 0.0 && x0 <= 1.0))
        throw std::invalid_argument("build_graded_mesh: x0 must lie in [0,1]");
    if (n_cells < 4) throw std::invalid_argument("build_graded_mesh: need at least 4 cells");
    if (nodes_per_cell < 2) throw std::invalid_argument("build_graded_mesh: need at least 2 nodes");
    if (alpha_hint < 0.0) alpha_hint = 0.0;

    QuadratureScheme s;
    s.x0_ = x0;
    s.nodes_per_cell_ = nodes_per_cell;
    s.grading_exponent_ = 1.0 + 0.5 * alpha_hint;
    const double ratio = std::pow(0.5, s.grading_exponent_);

    std::vector<double> gn, gw;
    detail::gauss_legendre(nodes_per_cell, gn, gw);

    // smallest substituted node sits at h * s_min^4; stop the ladder so it
    // stays above the distance floor
    const double s_min = 0.5 * (gn.front() + 1.0);
    const double h_stop = 2.0 * limits::node_distance_floor / std::pow(s_min, 4);

    // uniform backbone boundaries with x0 inserted
    std::vector<double> bounds;
    for (int i = 0; i <= n_cells; ++i) bounds.push_back(static_cast<double>(i) / n_cells);
    if (x0 > 0.0 && x0 < 1.0) bounds.push_back(x0);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    // drop slivers produced by the snap
    for (std::size_t i = 0; i + 1 < bounds.size();) {
        double w = bounds[i + 1] - bounds[i];
        if (w < 0.1 / n_cells && bounds[i] != x0 && bounds[i + 1] != x0 &&
            bounds[i] != 0.0 && bounds[i + 1] != 1.0) {
            bounds.erase(bounds.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        } else {
            ++i;
        }
    }

    // geometric ladder distances inside one backbone cell of width w_adj
    auto ladder = [&](double w_adj) {
        std::vector<double> d{w_adj};
        double cur = w_adj * ratio;
        while (cur > h_stop) {
            d.push_back(cur);
            cur *= ratio;
        }
        return d;  // descending; innermost cell is [x0, x0 + d.back()]
    };

    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        double lo = bounds[i], hi = bounds[i + 1];
        if (lo == x0) {  // refine toward x0 from the right
            auto d = ladder(hi - lo);
            s.add_cell(x0, x0 + d.back(), true, gn, gw);
            for (std::size_t k = d.size(); k-- > 1;)
                s.add_cell(x0 + d[k], x0 + d[k - 1], false, gn, gw);
        } else if (hi == x0) {  // refine toward x0 from the left
            auto d = ladder(hi - lo);
            for (std::size_t k = 0; k + 1 < d.size(); ++k)
                s.add_cell(hi - d[k], hi - d[k + 1], false, gn, gw);
            s.add_cell(hi - d.back(), hi, true, gn, gw);
        } else {
            s.add_cell(lo, hi, false, gn, gw);
        }
    }
    return s;
}

/// Rebuilds a scheme with extra cell boundaries inserted, e.g. to align
/// cells with the junction points of a piecewise integrand. Cells touching
/// x0 keep their substituted rules.
inline QuadratureScheme refine_with_breakpoints(const QuadratureScheme& base,
                                                const std::vector<double>& points) {
    std::vector<double> bounds;
    for (const auto& c : base.cells()) {
        bounds.push_back(c.lo);
        bounds.push_back(c.hi);
    }
    for (double p : points)
        if (p > 0.0 && p < 1.0) bounds.push_back(p);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                 bounds.end());

    QuadratureScheme s;
    s.x0_ = base.x0();
    s.nodes_per_cell_ = base.nodes_per_cell();
    s.grading_exponent_ = base.grading_exponent();
    std::vector<double> gn, gw;
    detail::gauss_legendre(base.nodes_per_cell(), gn, gw);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        bool touches = (bounds[i] == base.x0() || bounds[i + 1] == base.x0());
        s.add_cell(bounds[i], bounds[i + 1], touches, gn, gw);
    }
    return s;
}

/// Scheme sized for assembling operators over an N-function basis of
/// half-order n: the backbone tracks the basis resolution so oscillatory
/// products are integrated accurately, and the grading follows the
/// profile's power when it is known.
inline QuadratureScheme operator_scheme(const DegeneracyProfile& profile, int n, int N,
                                        int cells = 0, int nodes = 0) {
    double hint = profile.kind() == ProfileKind::PowerLaw ? profile.alpha() : 2.0;
    if (cells <= 0) cells = std::max(32, N);
    if (nodes <= 0) nodes = std::max(12, n + 2);
    return build_graded_mesh(profile.x0(), hint, cells, nodes);
}

/// Plain quadrature of f over [0,1]. Exact for polynomials up to the Gauss
/// order on interior cells; non-finite evaluations are reported with the
/// offending node.
template <class F>
inline double integrate(F&& f, const QuadratureScheme& scheme) {
    double sum = 0.0;
    const auto& xs = scheme.nodes();
    const auto& ws = scheme.weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = f(xs[i]);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrate: non-finite integrand value at node x = " << xs[i];
            throw NumericalError(os.str());
        }
        sum += ws[i] * v;
    }
    return sum;
}

/// Quadrature of f(x)/a(x). Signals divergence when the weighted integrand
/// at some node exceeds the integrand's own sup scale by the divergence
/// ratio, which is how a non-integrable singularity of 1/a manifests on a
/// mesh graded down to the node floor.
template <class F>
inline double integrate_weighted(F&& f, const DegeneracyProfile& profile,
                                 const QuadratureScheme& scheme) {
    double sum = 0.0;
    double max_f = 0.0;
    double max_ratio_val = 0.0;
    double max_ratio_loc = 0.0;
    const auto& xs = scheme.nodes();
    const auto& ws = scheme.weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double fx = f(xs[i]);
        double ax = profile.a(xs[i]);
        double v = fx / ax;
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrate_weighted: non-finite weighted integrand at node x = " << xs[i];
            throw DivergenceError(os.str(), xs[i]);
        }
        max_f = std::max(max_f, std::abs(fx));
        if (std::abs(v) > max_ratio_val) {
            max_ratio_val = std::abs(v);
            max_ratio_loc = xs[i];
        }
        sum += ws[i] * v;
    }
    if (max_ratio_val > limits::divergence_ratio * max_f) {
        std::ostringstream os;
        os << "integrate_weighted: divergent weighted integral, node contribution "
           << max_ratio_val << " at x = " << max_ratio_loc << " exceeds " << max_f << " * 1e12";
        throw DivergenceError(os.str(), max_ratio_loc);
    }
    return sum;
}

}  // namespace degenop

#endif
