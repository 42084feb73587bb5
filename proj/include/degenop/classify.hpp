#ifndef DEGENOP_CLASSIFY_HPP
#define DEGENOP_CLASSIFY_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "degenop/common.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

enum class Degeneracy { Weak, Strong, NonDegenerate };

struct DegeneracyClass {
    Degeneracy kind = Degeneracy::Weak;
    double integral_estimate = 0.0;  // of 1/a; meaningful unless divergent
    bool divergent = false;
};

namespace detail {

/// int 1/a over [0,1] minus the eps-window around x0, on geometric subcells
/// toward the truncation point. The integrand is bounded there, so plain
/// Gauss rules suffice.
inline double truncated_weight_integral(const DegeneracyProfile& p, double eps, int gauss_order) {
    std::vector<double> gn, gw;
    gauss_legendre(std::max(gauss_order, 6), gn, gw);
    auto side = [&](double to, double direction) {  // distances from x0 in (eps, to)
        double total = 0.0;
        double lo = eps;
        while (lo < to) {
            double hi = std::min(2.0 * lo, to);
            for (std::size_t i = 0; i < gn.size(); ++i) {
                double d = lo + 0.5 * (hi - lo) * (gn[i] + 1.0);
                double w = 0.5 * (hi - lo) * gw[i];
                total += w / p.a(p.x0() + direction * d);
            }
            lo = hi;
        }
        return total;
    };
    double total = 0.0;
    if (1.0 - p.x0() > eps) total += side(1.0 - p.x0(), +1.0);
    if (p.x0() > eps) total += side(p.x0(), -1.0);
    return total;
}

}  // namespace detail

/// Decides the degeneracy type of a(x) by the dichotomy 1/a integrable or
/// not. Truncated integrals I(eps_l) with eps_l = 10^-l are compared across
/// six refinements: increments that keep a ratio >= 0.9, or a total beyond
/// the divergence threshold, mean Strong; increments that die out mean Weak,
/// with the geometric tail added to the estimate. Mixed signals raise
/// InconclusiveError.
inline DegeneracyClass classify(const DegeneracyProfile& profile, const QuadratureScheme& scheme) {
    // non-degenerate escape: a stays away from zero, including at x0
    double min_a = profile.a(profile.x0());
    for (int g = 0; g <= 400; ++g) min_a = std::min(min_a, profile.a(g / 400.0));
    if (min_a > 1e-9) {
        DegeneracyClass c;
        c.kind = Degeneracy::NonDegenerate;
        c.integral_estimate = integrate([&](double x) { return 1.0 / profile.a(x); }, scheme);
        return c;
    }

    // sampled form of the standing hypothesis: a(x0) = 0, a > 0 elsewhere
    if (!(profile.a(profile.x0()) <= 1e-9))
        throw std::invalid_argument("classify: coefficient does not vanish at x0");
    for (int g = 0; g <= 400; ++g) {
        double x = g / 400.0;
        if (std::abs(x - profile.x0()) > 1e-9 && !(profile.a(x) > 0.0))
            throw std::invalid_argument("classify: coefficient must be positive away from x0");
    }

    const int refinements = 6;
    std::vector<double> partial;
    for (int l = 1; l <= refinements + 1; ++l)
        partial.push_back(
            detail::truncated_weight_integral(profile, std::pow(10.0, -l), scheme.nodes_per_cell()));

    std::vector<double> inc;
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) inc.push_back(partial[i + 1] - partial[i]);

    if (partial.back() > limits::classify_divergence_threshold) {
        DegeneracyClass c;
        c.kind = Degeneracy::Strong;
        c.divergent = true;
        c.integral_estimate = partial.back();
        return c;
    }

    // ratios of the last increments decide the dichotomy
    int grow = 0, decay = 0;
    double last_ratio = 0.0;
    for (std::size_t i = inc.size() - 3; i + 1 < inc.size(); ++i) {
        if (inc[i] <= 0.0) { ++decay; continue; }
        double r = inc[i + 1] / inc[i];
        last_ratio = r;
        if (r >= 0.9) ++grow; else ++decay;
    }
    DegeneracyClass c;
    if (grow > 0 && decay > 0)
        throw InconclusiveError("classify: refinement increments neither stabilize nor grow");
    if (grow > 0) {
        c.kind = Degeneracy::Strong;
        c.divergent = true;
        c.integral_estimate = partial.back();
        return c;
    }
    c.kind = Degeneracy::Weak;
    double tail = (last_ratio > 0.0 && last_ratio < 1.0)
                      ? inc.back() * last_ratio / (1.0 - last_ratio)
                      : 0.0;
    c.integral_estimate = partial.back() + tail;
    return c;
}

/// Certificate for the pointwise bound 1/a <= C /|x-x0|^K with K in [1,2]
/// and for the one-sided monotonicity of a around x0. Sample-based: fits the
/// local growth exponent of 1/a on a geometric ladder toward x0 and then
/// verifies the bound at every sample.
struct HypothesisReport {
    bool bound_ok = false;     // some K in [1,2] with finite C bounds the samples
    double k_exponent = 0.0;   // smallest workable K when bound_ok
    double k_constant = 0.0;   // the accompanying C
    bool monotone_ok = false;  // nonincreasing left / nondecreasing right of x0
    int samples_used = 0;
};

inline HypothesisReport check_hypothesis_33(const DegeneracyProfile& profile,
                                            int sample_count = 512) {
    const double x0 = profile.x0();
    HypothesisReport rep;

    // geometric distance ladder per side, 1e-6 up to the domain span
    auto ladder = [&](bool right) {
        std::vector<double> d;
        double span = right ? (1.0 - x0) : x0;
        if (span <= 0.0) return d;
        double lo = 1e-6 * span, hi = span * (1.0 - 1e-12);
        for (int i = 0; i < sample_count; ++i)
            d.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (sample_count - 1)));
        return d;
    };

    // local growth exponent of 1/a from the innermost decade, least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (bool right : {true, false}) {
        for (double d : ladder(right)) {
            if (d > 1e-4) continue;
            double a = profile.a(right ? x0 + d : x0 - d);
            if (!(a > 0.0)) continue;
            double lx = std::log(d), ly = std::log(1.0 / a);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
    }
    if (n < 8) throw std::invalid_argument("check_hypothesis_33: too few usable samples near x0");
    double growth = -(n * sxy - sx * sy) / (n * sxx - sx * sx);

    rep.samples_used = n;
    if (growth > 2.0 + 0.05) {
        rep.bound_ok = false;  // 1/a outgrows every admissible |x-x0|^-K
    } else {
        rep.bound_ok = true;
        rep.k_exponent = std::clamp(growth, 1.0, 2.0);
        double c = 0.0;
        int used = 0;
        for (bool right : {true, false}) {
            for (double d : ladder(right)) {
                double a = profile.a(right ? x0 + d : x0 - d);
                if (!(a > 0.0)) continue;
                c = std::max(c, std::pow(d, rep.k_exponent) / a);
                ++used;
            }
        }
        rep.k_constant = c * (1.0 + 1e-10);
        rep.samples_used = used;
    }

    // pairwise monotonicity on each side
    rep.monotone_ok = true;
    const double tol = 1e-12;
    auto check_side = [&](bool right) {
        auto d = ladder(right);
        std::sort(d.begin(), d.end());
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            double nearer = profile.a(right ? x0 + d[i] : x0 - d[i]);
            double farther = profile.a(right ? x0 + d[i + 1] : x0 - d[i + 1]);
            if (nearer > farther + tol + 1e-12 * std::abs(farther)) rep.monotone_ok = false;
        }
    };
    check_side(true);
    check_side(false);
    return rep;
}

}  // namespace degenop

#endif
