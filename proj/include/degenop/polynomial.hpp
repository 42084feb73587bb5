#ifndef DEGENOP_POLYNOMIAL_HPP
#define DEGENOP_POLYNOMIAL_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace degenop {

/// Dense polynomial with monomial coefficients, ascending order. Intended
/// for analytic fixtures of modest degree (clamped test polynomials and
/// their exact derivatives and integrals), not for basis evaluation.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
    }
    Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double operator()(double x) const {
        double r = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return Polynomial{0.0};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    Polynomial derivative(int order) const {
        Polynomial p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p;
    }

    Polynomial antiderivative() const {
        std::vector<double> a(coeffs_.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
        return Polynomial(std::move(a));
    }

    /// Exact definite integral, the independent route used by test oracles.
    double integral(double a, double b) const {
        Polynomial F = antiderivative();
        return F(b) - F(a);
    }

    /// Coefficients of p(1 - x).
    Polynomial mirrored() const {
        std::vector<double> m(coeffs_.size(), 0.0);
        std::vector<double> binom{1.0};
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            double sign = 1.0;
            for (std::size_t j = 0; j <= i; ++j) {
                m[j] += coeffs_[i] * binom[j] * sign;
                sign = -sign;
            }
            binom.push_back(0.0);
            for (std::size_t j = binom.size() - 1; j > 0; --j) binom[j] += binom[j - 1];
        }
        return Polynomial(std::move(m));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
        return Polynomial(std::move(r));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (o * -1.0); }

    Polynomial operator*(const Polynomial& o) const {
        std::vector<double> r(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                r[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(double s) const {
        std::vector<double> r = coeffs_;
        for (double& c : r) c *= s;
        return Polynomial(std::move(r));
    }

    static Polynomial monomial(int k, double c = 1.0) {
        std::vector<double> r(static_cast<std::size_t>(k) + 1, 0.0);
        r.back() = c;
        return Polynomial(std::move(r));
    }

    /// x^m (1-x)^m * q, vanishing with all derivatives up to m-1 at both ends.
    static Polynomial clamped(int m, const Polynomial& q) {
        Polynomial xm = monomial(m);
        Polynomial one_minus_x{1.0, -1.0};
        Polynomial w = xm;
        for (int i = 0; i < m; ++i) w = w * one_minus_x;
        return w * q;
    }

private:
    std::vector<double> coeffs_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

}  // namespace degenop

#endif
