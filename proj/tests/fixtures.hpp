#ifndef DEGENOP_TESTS_FIXTURES_HPP
#define DEGENOP_TESTS_FIXTURES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "degenop/assembly.hpp"
#include "degenop/basis.hpp"
#include "degenop/polynomial.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace fixtures {

/// Random polynomial of degree <= deg with coefficients uniform in [-1,1].
inline degenop::Polynomial random_polynomial(std::mt19937_64& rng, int deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(deg) + 1);
    for (double& v : c) v = u(rng);
    return degenop::Polynomial(std::move(c));
}

/// x^m (1-x)^m q(x) with random q: clamped to order m at both endpoints.
inline degenop::Polynomial random_clamped(std::mt19937_64& rng, int m, int deg_q = 6) {
    return degenop::Polynomial::clamped(m, random_polynomial(rng, deg_q));
}

struct ProfileCase {
    double alpha;
    double x0;
    bool strong;
};

/// The alpha/x0 sweep exercised by the verification matrix.
inline std::vector<ProfileCase> profile_matrix() {
    std::vector<ProfileCase> cases;
    for (double alpha : {0.5, 1.0, 1.5, 2.0})
        for (double x0 : {0.0, 0.5})
            cases.push_back({alpha, x0, alpha >= 1.0});
    return cases;
}

inline bool needs_pin(const ProfileCase& pc) { return pc.strong && pc.x0 > 0.0 && pc.x0 < 1.0; }

/// Assembled operator for a matrix case, pinned exactly when required.
inline degenop::AssembledOperator make_operator(const ProfileCase& pc, int n, int N) {
    auto profile = degenop::make_power_profile(pc.alpha, pc.x0);
    auto basis = degenop::build_basis(n, N, needs_pin(pc), pc.x0);
    auto scheme = degenop::operator_scheme(profile, n, N);
    return degenop::assemble(basis, profile, scheme);
}

/// Root of cos(k) cosh(k) = 1 near the given bracket, by bisection. The
/// characteristic equation of the clamped fourth-order eigenproblem; used
/// as the independent spectral oracle.
inline double clamped_beam_root(double lo, double hi) {
    auto f = [](double k) { return std::cos(k) * std::cosh(k) - 1.0; };
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; } else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fixtures

#endif
