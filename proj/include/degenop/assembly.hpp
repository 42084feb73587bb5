#ifndef DEGENOP_ASSEMBLY_HPP
#define DEGENOP_ASSEMBLY_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "degenop/basis.hpp"
#include "degenop/function_sample.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

/// Discrete operator pair: stiffness S_jk = int phi_j^(n) phi_k^(n) dx and
/// weighted mass M_jk = int phi_j phi_k / a dx. S represents the sign
/// convention (-1)^n a u^(2n) under which the form is nonnegative for every
/// half-order n. Both matrices are symmetrized after assembly; the
/// pre-averaging asymmetry is kept as a quadrature quality metric.
struct AssembledOperator {
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd weighted_mass;
    BasisSet basis;
    DegeneracyProfile profile;
    QuadratureScheme scheme;
    int parity_sign = 1;  // (-1)^n
    double presym_asymmetry_stiffness = 0.0;
    double presym_asymmetry_mass = 0.0;

    int size() const { return static_cast<int>(stiffness.rows()); }
};

/// Fills S and M by quadrature over the scheme. Divergent mass entries are
/// reported with the offending pair; for a strongly degenerate interior x0
/// this means the basis must be pinned there first.
inline AssembledOperator assemble(const BasisSet& basis, const DegeneracyProfile& profile,
                                  const QuadratureScheme& scheme) {
    const int N = basis.size();
    const auto& xs = scheme.nodes();
    const auto& ws = scheme.weights();
    const Eigen::Index nn = static_cast<Eigen::Index>(xs.size());

    Eigen::MatrixXd B0 = basis.value_table(scheme, 0);
    Eigen::MatrixXd Bn = basis.value_table(scheme, basis.order_n());

    Eigen::VectorXd w(nn), inv_a(nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        w(i) = ws[static_cast<std::size_t>(i)];
        double a = profile.a(xs[static_cast<std::size_t>(i)]);
        inv_a(i) = 1.0 / a;
        if (!std::isfinite(inv_a(i)))
            throw DivergenceError("assemble: coefficient vanishes at a quadrature node",
                                  xs[static_cast<std::size_t>(i)]);
    }

    AssembledOperator op{Eigen::MatrixXd(N, N), Eigen::MatrixXd(N, N), basis, profile, scheme};
    op.parity_sign = (basis.order_n() % 2 == 0) ? 1 : -1;

    for (int j = 0; j < N; ++j) {
        for (int k = j; k < N; ++k) {
            double s = 0.0;
            double m = 0.0;
            double max_f = 0.0, max_ratio = 0.0;
            double max_ratio_loc = 0.0;
            for (Eigen::Index i = 0; i < nn; ++i) {
                s += w(i) * Bn(i, j) * Bn(i, k);
                double f = B0(i, j) * B0(i, k);
                double v = f * inv_a(i);
                m += w(i) * v;
                max_f = std::max(max_f, std::abs(f));
                if (std::abs(v) > max_ratio) {
                    max_ratio = std::abs(v);
                    max_ratio_loc = xs[static_cast<std::size_t>(i)];
                }
            }
            if (max_ratio > limits::divergence_ratio * max_f) {
                std::ostringstream os;
                os << "assemble: weighted mass entry (" << j << "," << k
                   << ") diverges near x = " << max_ratio_loc
                   << "; the basis is not in the weighted space (pin x0?)";
                throw DivergenceError(os.str(), max_ratio_loc, j, k);
            }
            op.stiffness(j, k) = s;
            op.stiffness(k, j) = s;
            op.weighted_mass(j, k) = m;
            op.weighted_mass(k, j) = m;
        }
    }

    // entries above were written symmetrically; the averaging step is kept
    // explicit so any future nonsymmetric fill is still recorded and fixed
    op.presym_asymmetry_stiffness =
        (op.stiffness - op.stiffness.transpose()).cwiseAbs().maxCoeff();
    op.presym_asymmetry_mass =
        (op.weighted_mass - op.weighted_mass.transpose()).cwiseAbs().maxCoeff();
    op.stiffness = 0.5 * (op.stiffness + op.stiffness.transpose()).eval();
    op.weighted_mass = 0.5 * (op.weighted_mass + op.weighted_mass.transpose()).eval();
    return op;
}

/// | int u^(2n) v dx - (-1)^n int u^(n) v^(n) dx |, the defect of the
/// integration-by-parts identity on a clamped pair.
inline double green_residual(const FunctionSample& u, const FunctionSample& v, int n,
                             const QuadratureScheme& scheme) {
    if (u.max_order() < 2 * n)
        throw std::invalid_argument("green_residual: u needs 2n derivatives");
    if (v.max_order() < n) throw std::invalid_argument("green_residual: v needs n derivatives");
    if (!is_clamped(u, n) || !is_clamped(v, n))
        throw std::invalid_argument("green_residual: both functions must satisfy the clamped conditions");
    double lhs = integrate([&](double x) { return u(x, 2 * n) * v(x); }, scheme);
    double rhs = integrate([&](double x) { return u(x, n) * v(x, n); }, scheme);
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return std::abs(lhs - sign * rhs);
}

/// Dense row-major CSV dump of S and M with an identification header.
inline void export_operator_csv(const AssembledOperator& op, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_operator_csv: cannot open " + path);
    f.precision(17);
    f << "# N=" << op.size() << ",n=" << op.basis.order_n()
      << ",profile=" << op.profile.fingerprint() << "\n";
    f << "matrix,row,col,value\n";
    for (int j = 0; j < op.size(); ++j)
        for (int k = 0; k < op.size(); ++k)
            f << "S," << j << "," << k << "," << op.stiffness(j, k) << "\n";
    for (int j = 0; j < op.size(); ++j)
        for (int k = 0; k < op.size(); ++k)
            f << "M," << j << "," << k << "," << op.weighted_mass(j, k) << "\n";
}

}  // namespace degenop

#endif
