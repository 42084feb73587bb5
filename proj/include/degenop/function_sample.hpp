#ifndef DEGENOP_FUNCTION_SAMPLE_HPP
#define DEGENOP_FUNCTION_SAMPLE_HPP

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "degenop/polynomial.hpp"

namespace degenop {

enum class Provenance { Analytic, GalerkinCoefficients };

/// A function together with evaluators for its derivatives up to some order.
/// Derivatives are analytic (exact for the represented function), never
/// finite differences.
class FunctionSample {
public:
    using Evaluator = std::function<double(double)>;

    FunctionSample(std::vector<Evaluator> derivs, Provenance prov)
        : derivs_(std::move(derivs)), provenance_(prov) {
        if (derivs_.empty())
            throw std::invalid_argument("FunctionSample: need at least the order-0 evaluator");
    }

    double operator()(double x, int order = 0) const {
        if (order < 0 || order > max_order())
            throw std::invalid_argument("FunctionSample: derivative order out of range");
        return derivs_[static_cast<std::size_t>(order)](x);
    }

    int max_order() const { return static_cast<int>(derivs_.size()) - 1; }
    Provenance provenance() const { return provenance_; }

    static FunctionSample from_polynomial(const Polynomial& p, int orders) {
        std::vector<Evaluator> d;
        Polynomial cur = p;
        for (int i = 0; i <= orders; ++i) {
            d.emplace_back([cur](double x) { return cur(x); });
            cur = cur.derivative();
        }
        return FunctionSample(std::move(d), Provenance::Analytic);
    }

    static FunctionSample zero(int orders) {
        std::vector<Evaluator> d(static_cast<std::size_t>(orders) + 1,
                                 [](double) { return 0.0; });
        return FunctionSample(std::move(d), Provenance::Analytic);
    }

private:
    std::vector<Evaluator> derivs_;
    Provenance provenance_;
};

/// True when u and its derivatives up to order m-1 vanish at both endpoints
/// within tol, i.e. u numerically satisfies the clamped conditions.
inline bool is_clamped(const FunctionSample& u, int m, double tol = 1e-10) {
    for (int k = 0; k < m; ++k) {
        if (std::abs(u(0.0, k)) > tol) return false;
        if (std::abs(u(1.0, k)) > tol) return false;
    }
    return true;
}

}  // namespace degenop

#endif
