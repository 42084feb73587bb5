#ifndef DEGENOP_BASIS_HPP
#define DEGENOP_BASIS_HPP

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "degenop/function_sample.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

namespace detail {

/// D^m P_k(t) for k = 0..K and m = 0..maxord on [-1,1], by the m-times
/// differentiated three-term recurrence. Stable for the degrees used here,
/// unlike monomial coefficients which cancel catastrophically past k ~ 30.
inline void legendre_derivatives(double t, int K, int maxord, Eigen::MatrixXd& out) {
    out.setZero(K + 1, maxord + 1);
    out(0, 0) = 1.0;
    if (K >= 1) {
        out(1, 0) = t;
        if (maxord >= 1) out(1, 1) = 1.0;
    }
    for (int k = 1; k < K; ++k) {
        for (int m = 0; m <= maxord; ++m) {
            double tP = t * out(k, m) + (m >= 1 ? m * out(k, m - 1) : 0.0);
            out(k + 1, m) = ((2.0 * k + 1.0) * tP - k * out(k - 1, m)) / (k + 1.0);
        }
    }
}

inline double falling_factorial(int n, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= (n - i);
    return r;
}

/// Derivatives of w(x) = x^n (1-x)^n up to maxord, by Leibniz.
inline void clamp_weight_derivatives(double x, int n, int maxord, std::vector<double>& w) {
    std::vector<double> A(maxord + 1, 0.0), B(maxord + 1, 0.0);
    for (int j = 0; j <= maxord; ++j) {
        if (j <= n) {
            A[j] = falling_factorial(n, j) * std::pow(x, n - j);
            B[j] = falling_factorial(n, j) * std::pow(1.0 - x, n - j) * ((j % 2) ? -1.0 : 1.0);
        }
    }
    w.assign(maxord + 1, 0.0);
    for (int m = 0; m <= maxord; ++m) {
        double binom = 1.0;
        for (int j = 0; j <= m; ++j) {
            w[m] += binom * A[j] * B[m - j];
            binom = binom * (m - j) / (j + 1.0);
        }
    }
}

}  // namespace detail

/// Clamped polynomial basis phi_k = x^n (1-x)^n P_k(x) with P_k shifted
/// Legendre polynomials of increasing degree. Every member satisfies
/// u^(j)(0) = u^(j)(1) = 0 for j < n exactly by the x^n (1-x)^n factor.
/// Optionally recombined so that each function also vanishes at an interior
/// point x0, which drops one dimension. Functions are scaled to unit n-th
/// derivative L^2 norm, and derivatives up to 2n are available analytically.
class BasisSet {
public:
    int order_n() const { return n_; }
    int size() const { return static_cast<int>(combine_.rows()); }
    int raw_size() const { return static_cast<int>(combine_.cols()); }
    bool pinned_x0() const { return pinned_; }
    double x0() const { return x0_; }

    /// Values of all basis functions' order-th derivatives at x.
    Eigen::VectorXd eval_all(double x, int order) const {
        if (order < 0 || order > 2 * n_)
            throw std::invalid_argument("BasisSet: derivative order out of range");
        Eigen::MatrixXd P;
        detail::legendre_derivatives(2.0 * x - 1.0, raw_size() - 1, order, P);
        std::vector<double> w;
        detail::clamp_weight_derivatives(x, n_, order, w);
        Eigen::VectorXd raw(raw_size());
        for (int k = 0; k < raw_size(); ++k) {
            double s = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= order; ++j) {
                s += binom * w[static_cast<std::size_t>(j)] *
                     std::pow(2.0, order - j) * P(k, order - j);
                binom = binom * (order - j) / (j + 1.0);
            }
            raw(k) = s;
        }
        return combine_ * raw;
    }

    double eval(int k, double x, int order) const { return eval_all(x, order)(k); }

    /// Value table (nodes x functions) of order-th derivatives on a scheme.
    Eigen::MatrixXd value_table(const QuadratureScheme& scheme, int order) const {
        const auto& xs = scheme.nodes();
        Eigen::MatrixXd T(static_cast<Eigen::Index>(xs.size()), size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            T.row(static_cast<Eigen::Index>(i)) = eval_all(xs[i], order).transpose();
        return T;
    }

    friend BasisSet build_basis(int, int, bool, double);

private:
    int n_ = 2;
    bool pinned_ = false;
    double x0_ = 0.0;
    Eigen::MatrixXd combine_;  // rows: exposed functions as combinations of raw ones
};

/// Builds the basis. pin_x0 with a boundary x0 is rejected: the clamped
/// conditions already force vanishing there, so the constraint would be
/// redundant. Pinning at an interior x0 eliminates one function by Gaussian
/// elimination on the constraint row phi(x0).
inline BasisSet build_basis(int n, int N, bool pin_x0, double x0) {
    if (n < 2) throw std::invalid_argument("build_basis: half-order n must be >= 2");
    if (N < 4) throw std::invalid_argument("build_basis: need at least 4 functions");
    if (pin_x0 && (x0 <= 0.0 || x0 >= 1.0))
        throw std::invalid_argument(
            "build_basis: pinning at a boundary x0 is redundant with the clamped conditions");

    BasisSet b;
    b.n_ = n;
    b.x0_ = x0;
    b.pinned_ = pin_x0;
    b.combine_ = Eigen::MatrixXd::Identity(N, N);

    // scale to unit n-th derivative norm on an internal uniform Gauss rule
    {
        std::vector<double> gn, gw;
        detail::gauss_legendre(std::max(8, N + 2 * n), gn, gw);
        const int cells = 8;
        Eigen::VectorXd norms = Eigen::VectorXd::Zero(N);
        BasisSet raw;
        raw.n_ = n;
        raw.x0_ = x0;
        raw.combine_ = Eigen::MatrixXd::Identity(N, N);
        for (int c = 0; c < cells; ++c) {
            double lo = static_cast<double>(c) / cells, hi = (c + 1.0) / cells;
            for (std::size_t i = 0; i < gn.size(); ++i) {
                double x = lo + 0.5 * (hi - lo) * (gn[i] + 1.0);
                double w = 0.5 * (hi - lo) * gw[i];
                Eigen::VectorXd v = raw.eval_all(x, n);
                norms += w * v.cwiseProduct(v);
            }
        }
        for (int k = 0; k < N; ++k) b.combine_(k, k) = 1.0 / std::sqrt(norms(k));
    }

    if (pin_x0) {
        Eigen::VectorXd at_x0 = b.eval_all(x0, 0);
        int pivot = 0;
        at_x0.cwiseAbs().maxCoeff(&pivot);
        if (std::abs(at_x0(pivot)) < 1e-14)
            throw NumericalError("build_basis: pinning constraint is degenerate");
        Eigen::MatrixXd R(N - 1, N);
        int row = 0;
        for (int k = 0; k < N; ++k) {
            if (k == pivot) continue;
            Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(N);
            r(k) = 1.0;
            r(pivot) = -at_x0(k) / at_x0(pivot);
            R.row(row++) = r;
        }
        b.combine_ = R * b.combine_;
    }
    return b;
}

/// Function sample backed by a coefficient vector in a basis; derivatives
/// are the exact derivatives of the expansion.
inline FunctionSample sample_from_coefficients(const BasisSet& basis,
                                               const Eigen::VectorXd& coeffs) {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("sample_from_coefficients: coefficient size mismatch");
    auto shared = std::make_shared<std::pair<BasisSet, Eigen::VectorXd>>(basis, coeffs);
    std::vector<FunctionSample::Evaluator> d;
    for (int m = 0; m <= 2 * basis.order_n(); ++m) {
        d.emplace_back([shared, m](double x) {
            return shared->first.eval_all(x, m).dot(shared->second);
        });
    }
    return FunctionSample(std::move(d), Provenance::GalerkinCoefficients);
}

}  // namespace degenop

#endif
