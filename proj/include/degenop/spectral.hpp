#ifndef DEGENOP_SPECTRAL_HPP
#define DEGENOP_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "degenop/assembly.hpp"

namespace degenop {

/// M-orthonormal eigenpairs of the pencil S v = lambda M v, ascending.
/// Diagonalizes the discrete operator, so the semigroup and resolvent reduce
/// to scalar functions of the eigenvalues.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending, nonnegative up to roundoff
    Eigen::MatrixXd eigenvectors;  // columns, V^T M V = I
    Eigen::MatrixXd weighted_mass;

    int size() const { return static_cast<int>(eigenvalues.size()); }

    /// Coefficients in the eigenbasis: y = V^T M c.
    Eigen::VectorXd to_modal(const Eigen::VectorXd& coeffs) const {
        return eigenvectors.transpose() * (weighted_mass * coeffs);
    }
    Eigen::VectorXd from_modal(const Eigen::VectorXd& modal) const {
        return eigenvectors * modal;
    }
    double weighted_norm(const Eigen::VectorXd& coeffs) const {
        return std::sqrt(std::max(0.0, coeffs.dot(weighted_mass * coeffs)));
    }
};

/// Solves the symmetric-definite generalized eigenproblem by Cholesky
/// reduction of M to a standard symmetric problem. M must be positive
/// definite; a failed factorization points at a basis/quadrature
/// misconfiguration such as a missing pin in the strongly degenerate case.
inline SpectralDecomposition eigendecompose(const AssembledOperator& op) {
    Eigen::LLT<Eigen::MatrixXd> llt(op.weighted_mass);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mes(op.weighted_mass);
        std::ostringstream os;
        os << "eigendecompose: weighted mass is not positive definite (min eigenvalue "
           << mes.eigenvalues().minCoeff() << ")";
        throw NumericalError(os.str());
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        op.stiffness, op.weighted_mass, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: generalized eigenvalue iteration failed");
    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();
    dec.weighted_mass = op.weighted_mass;
    return dec;
}

/// Coefficients of e^{-tA} u0. Exact on eigenmodes; t = 0 is the identity.
inline Eigen::VectorXd semigroup_apply(const SpectralDecomposition& dec, double t,
                                       const Eigen::VectorXd& u0_coeffs) {
    if (t < 0.0) throw std::invalid_argument("semigroup_apply: time must be nonnegative");
    if (t == 0.0) return u0_coeffs;
    Eigen::VectorXd y = dec.to_modal(u0_coeffs);
    for (int k = 0; k < dec.size(); ++k) y(k) *= std::exp(-dec.eigenvalues(k) * t);
    return dec.from_modal(y);
}

/// Coefficients of (lam I + A)^{-1} f for complex lam away from -spec(A).
inline Eigen::VectorXcd resolvent_apply(const SpectralDecomposition& dec,
                                        std::complex<double> lam,
                                        const Eigen::VectorXd& f_coeffs) {
    double lam_max = std::max(dec.eigenvalues.maxCoeff(), 1.0);
    for (int k = 0; k < dec.size(); ++k) {
        if (std::abs(lam + std::complex<double>(dec.eigenvalues(k), 0.0)) <
            1e-10 * lam_max)
            throw std::invalid_argument("resolvent_apply: lam is numerically in the spectrum");
    }
    Eigen::VectorXd y = dec.to_modal(f_coeffs);
    Eigen::VectorXcd z(dec.size());
    for (int k = 0; k < dec.size(); ++k)
        z(k) = std::complex<double>(y(k), 0.0) / (lam + dec.eigenvalues(k));
    return dec.eigenvectors.cast<std::complex<double>>() * z;
}

/// t * || A e^{-tA} || in the M-operator norm, i.e. t * max_k lambda_k
/// e^{-lambda_k t}. Bounded by 1/e for every t > 0; the quantitative
/// smoothing certificate of an analytic semigroup.
inline double smoothing_norm(const SpectralDecomposition& dec, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("smoothing_norm: time must be positive");
    double m = 0.0;
    for (int k = 0; k < dec.size(); ++k)
        m = std::max(m, dec.eigenvalues(k) * std::exp(-dec.eigenvalues(k) * t));
    return t * m;
}

/// || lam (lam + A)^{-1} || in the M-operator norm. Stays <= 1 on the
/// imaginary axis for a self-adjoint nonnegative A, the sector certificate.
inline double resolvent_sector_bound(const SpectralDecomposition& dec,
                                     std::complex<double> lam) {
    double m = 0.0;
    for (int k = 0; k < dec.size(); ++k)
        m = std::max(m, std::abs(lam) / std::abs(lam + dec.eigenvalues(k)));
    return m;
}

}  // namespace degenop

#endif
