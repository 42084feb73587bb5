#ifndef DEGENOP_SOLVER_HPP
#define DEGENOP_SOLVER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "degenop/spectral.hpp"

namespace degenop {

/// Right-hand side vector b_j = int g phi_j / a dx. Divergence of the
/// membership integral int g^2/a means g is not in the weighted space
/// (typically g(x0) != 0 under strong degeneracy) and is signalled before
/// any pairing is computed.
inline Eigen::VectorXd weighted_load_vector(const std::function<double(double)>& g,
                                            const AssembledOperator& op) {
    integrate_weighted([&](double x) { double t = g(x); return t * t; }, op.profile, op.scheme);
    const auto& xs = op.scheme.nodes();
    const auto& ws = op.scheme.weights();
    Eigen::MatrixXd B0 = op.basis.value_table(op.scheme, 0);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(op.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = ws[i] * g(xs[i]) / op.profile.a(xs[i]);
        b += v * B0.row(static_cast<Eigen::Index>(i)).transpose();
    }
    return b;
}

namespace detail {

/// Direct solve with one step of iterative refinement; the mass matrices of
/// high-order clamped bases are ill conditioned enough to need it.
inline Eigen::VectorXd refined_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                     const char* what) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError(std::string(what) + ": factorization failed");
    Eigen::VectorXd x = ldlt.solve(b);
    x += ldlt.solve(b - A * x);
    return x;
}

}  // namespace detail

/// Weighted L^2 projection onto the basis span: solves M c = b.
inline Eigen::VectorXd project_datum(const std::function<double(double)>& g,
                                     const AssembledOperator& op) {
    Eigen::VectorXd b = weighted_load_vector(g, op);
    return detail::refined_solve(op.weighted_mass, b, "project_datum");
}

struct EllipticSolution {
    Eigen::VectorXd coefficients;
    double residual_weighted = 0.0;  // ||(M+S)c - b|| in the discrete weighted dual norm
    double load_weighted_norm = 0.0;
};

/// Discrete variational solution of (I + A) u = f: solves (M + S) c = b.
inline EllipticSolution solve_elliptic(const AssembledOperator& op,
                                       const std::function<double(double)>& f) {
    Eigen::VectorXd b = weighted_load_vector(f, op);
    Eigen::MatrixXd K = op.weighted_mass + op.stiffness;
    EllipticSolution sol;
    sol.coefficients = detail::refined_solve(K, b, "solve_elliptic");
    Eigen::VectorXd r = b - K * sol.coefficients;
    Eigen::LDLT<Eigen::MatrixXd> mass(op.weighted_mass);
    sol.residual_weighted = std::sqrt(std::max(0.0, r.dot(mass.solve(r))));
    sol.load_weighted_norm = std::sqrt(std::max(0.0, b.dot(mass.solve(b))));
    return sol;
}

/// Time grid, states, weighted energies ||u||^2_{1/a} and dissipation
/// int (u^(n))^2 of a parabolic evolution.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    std::vector<double> energies;
    std::vector<double> dissipation;
};

namespace detail {

// phi1(z) = (1 - e^-z)/z and phi2(z) = (z - 1 + e^-z)/z^2, series near 0
inline double phi1(double z) {
    if (std::abs(z) < 1e-4) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return (1.0 - std::exp(-z)) / z;
}
inline double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0;
    return (z - 1.0 + std::exp(-z)) / (z * z);
}

}  // namespace detail

/// Evolves u' + A u = f(t,.) from u0 by exact eigenmode decay plus a
/// Duhamel correction per step: f is interpolated linearly in t on the step
/// (trapezoidal data usage) while the decay kernel is integrated exactly,
/// so constant-in-time forcing reaches its stationary state without a
/// stiffness error. f is projected at every time node with the mass
/// factorization cached. Pass f = nullptr for the homogeneous problem,
/// where the evolution is exact up to the decomposition.
inline EvolutionTrace evolve(const SpectralDecomposition& dec, const AssembledOperator& op,
                             const Eigen::VectorXd& u0, double T, int steps,
                             const std::function<double(double, double)>& f = nullptr) {
    if (!(T > 0.0)) throw std::invalid_argument("evolve: horizon must be positive");
    if (steps < 1) throw std::invalid_argument("evolve: need at least one step");
    if (u0.size() != dec.size()) throw std::invalid_argument("evolve: initial datum size mismatch");

    const double dt = T / steps;
    const int N = dec.size();

    Eigen::VectorXd y = dec.to_modal(u0);
    auto modal_load = [&](double t) -> Eigen::VectorXd {
        Eigen::VectorXd b =
            weighted_load_vector([&](double x) { return f(t, x); }, op);
        return dec.eigenvectors.transpose() * b;
    };

    EvolutionTrace trace;
    auto record = [&](double t, const Eigen::VectorXd& modal) {
        Eigen::VectorXd c = dec.from_modal(modal);
        trace.times.push_back(t);
        trace.states.push_back(t == 0.0 ? u0 : c);
        double e = (t == 0.0) ? u0.dot(dec.weighted_mass * u0) : modal.squaredNorm();
        trace.energies.push_back(e);
        double d = 0.0;
        for (int k = 0; k < N; ++k) d += dec.eigenvalues(k) * modal(k) * modal(k);
        trace.dissipation.push_back(d);
    };

    record(0.0, y);
    Eigen::VectorXd g_prev;
    if (f) g_prev = modal_load(0.0);
    for (int s = 1; s <= steps; ++s) {
        double t = s * dt;
        for (int k = 0; k < N; ++k) y(k) *= std::exp(-dec.eigenvalues(k) * dt);
        if (f) {
            Eigen::VectorXd g_now = modal_load(t);
            for (int k = 0; k < N; ++k) {
                double z = dec.eigenvalues(k) * dt;
                double w_new = dt * (detail::phi1(z) - detail::phi2(z));
                double w_old = dt * detail::phi2(z);
                y(k) += w_old * g_prev(k) + w_new * g_now(k);
            }
            g_prev = g_now;
        }
        record(t, y);
    }
    return trace;
}

}  // namespace degenop

#endif
