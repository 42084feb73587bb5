// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "degenop/degenop.hpp"

using namespace degenop;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

struct MatrixEntry {
    double alpha, x0;
    int n;
    bool strong() const { return alpha >= 1.0; }
    bool pin() const { return strong() && x0 > 0.0 && x0 < 1.0; }
};

std::vector<MatrixEntry> matrix() {
    std::vector<MatrixEntry> m;
    for (double alpha : {0.5, 1.0, 1.5, 2.0})
        for (double x0 : {0.0, 0.5})
            for (int n : {2, 3}) m.push_back({alpha, x0, n});
    return m;
}

AssembledOperator entry_operator(const MatrixEntry& e, int N) {
    auto profile = make_power_profile(e.alpha, e.x0);
    auto basis = build_basis(e.n, N, e.pin(), e.x0);
    return assemble(basis, profile, operator_scheme(profile, e.n, N));
}

double beam_root(double lo, double hi) {
    auto f = [](double k) { return std::cos(k) * std::cosh(k) - 1.0; };
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0) == (flo > 0)) { lo = mid; flo = f(mid); } else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

Polynomial random_poly(std::mt19937_64& rng, int deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(deg) + 1);
    for (double& v : c) v = u(rng);
    return Polynomial(std::move(c));
}

// u'''' + u = 1 with clamped ends in the exact exponential-trig basis;
// the independent stationary reference for the nondegenerate case
double beam_load_reference(double x) {
    static const Eigen::Vector4d c = [] {
        const double b = 1.0 / std::sqrt(2.0);
        auto mode = [b](int j, double x, int d) {
            double ch = std::cosh(b * x), sh = std::sinh(b * x);
            double co = std::cos(b * x), si = std::sin(b * x);
            switch (j) {
                case 0: return d == 0 ? ch * co : b * (sh * co - ch * si);
                case 1: return d == 0 ? ch * si : b * (sh * si + ch * co);
                case 2: return d == 0 ? sh * co : b * (ch * co - sh * si);
                default: return d == 0 ? sh * si : b * (ch * si + sh * co);
            }
        };
        Eigen::Matrix4d A;
        Eigen::Vector4d rhs;
        for (int row = 0; row < 2; ++row) {
            double x = row == 0 ? 0.0 : 1.0;
            for (int j = 0; j < 4; ++j) {
                A(row, j) = mode(j, x, 0);
                A(row + 2, j) = mode(j, x, 1);
            }
            rhs(row) = -1.0;
            rhs(row + 2) = 0.0;
        }
        return Eigen::Vector4d(A.colPivHouseholderQr().solve(rhs));
    }();
    const double b = 1.0 / std::sqrt(2.0);
    double ch = std::cosh(b * x), sh = std::sinh(b * x);
    double co = std::cos(b * x), si = std::sin(b * x);
    return 1.0 + c(0) * ch * co + c(1) * ch * si + c(2) * sh * co + c(3) * sh * si;
}

bool criterion_nondegenerate_sanity(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    auto profile = make_constant_profile(1.0);
    auto basis = build_basis(2, 32, false, 0.0);
    auto dec = eigendecompose(assemble(basis, profile, operator_scheme(profile, 2, 32)));
    double lam1 = std::pow(beam_root(4.6, 4.9), 4);
    double lam2 = std::pow(beam_root(7.6, 8.0), 4);
    double e1 = std::abs(dec.eigenvalues(0) - lam1) / lam1;
    double e2 = std::abs(dec.eigenvalues(1) - lam2) / lam2;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "rel_err(lambda1)=" << e1 << " rel_err(lambda2)=" << e2 << " runtime=" << secs << "s";
    detail = os.str();
    return e1 <= 1e-3 && e2 <= 5e-3 && secs < 5.0;
}

bool criterion_symmetry_nonnegativity(std::string& detail) {
    double worst_asym = 0.0, worst_neg = 0.0;
    for (const auto& e : matrix()) {
        auto op = entry_operator(e, 16);
        worst_asym = std::max(worst_asym,
                              (op.stiffness - op.stiffness.transpose()).cwiseAbs().maxCoeff() /
                                  op.stiffness.cwiseAbs().maxCoeff());
        auto dec = eigendecompose(op);
        worst_neg =
            std::max(worst_neg, -dec.eigenvalues.minCoeff() / dec.eigenvalues.maxCoeff());
    }
    std::ostringstream os;
    os << "max_asymmetry=" << worst_asym << " max_negative_part=" << worst_neg;
    detail = os.str();
    return worst_asym <= 1e-12 && worst_neg <= 1e-10;
}

bool criterion_green_formula(std::string& detail) {
    std::mt19937_64 rng(20240810);
    auto scheme = build_graded_mesh(0.0, 0.0, 32, 16);
    double worst = 0.0;
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 50; ++rep) {
            auto u = FunctionSample::from_polynomial(
                Polynomial::clamped(n, random_poly(rng, 5)), 2 * n);
            auto v = FunctionSample::from_polynomial(
                Polynomial::clamped(n, random_poly(rng, 5)), n);
            worst = std::max(worst, green_residual(u, v, n, scheme));
        }
    }
    // the symmetric quartic fixture: both routes equal 4/5 exactly
    auto u = FunctionSample::from_polynomial(Polynomial::clamped(2, Polynomial{1.0}), 4);
    double lhs = integrate([&](double x) { return u(x, 4) * u(x); }, scheme);
    double rhs = integrate([&](double x) { return u(x, 2) * u(x, 2); }, scheme);
    std::ostringstream os;
    os << "worst_residual=" << worst << " quartic_lhs=" << lhs << " quartic_rhs=" << rhs;
    detail = os.str();
    return worst <= 1e-10 && std::abs(lhs - 0.8) <= 1e-12 && std::abs(rhs - 0.8) <= 1e-12;
}

bool criterion_contraction(std::string& detail) {
    double worst = 0.0;
    for (const auto& e : matrix()) {
        auto dec = eigendecompose(entry_operator(e, 16));
        std::mt19937_64 rng(777);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int rep = 0; rep < 100; ++rep) {
            Eigen::VectorXd u0(dec.size());
            for (int i = 0; i < dec.size(); ++i) u0(i) = u(rng);
            double prev = dec.weighted_norm(u0);
            for (int g = 0; g < 30; ++g) {
                double t = std::pow(10.0, -6.0 + 6.0 * g / 29.0);
                double now = dec.weighted_norm(semigroup_apply(dec, t, u0));
                worst = std::max(worst, (now - prev) / std::max(prev, 1e-300));
                prev = now;
            }
        }
    }
    std::ostringstream os;
    os << "worst_relative_increase=" << worst;
    detail = os.str();
    return worst <= 1e-10;
}

bool criterion_analyticity(std::string& detail) {
    double worst_smooth = 0.0, worst_sector = 0.0;
    for (const auto& e : matrix()) {
        auto dec = eigendecompose(entry_operator(e, 16));
        for (int g = 0; g < 30; ++g) {
            double t = std::pow(10.0, -8.0 + 10.0 * g / 29.0);
            worst_smooth = std::max(worst_smooth, smoothing_norm(dec, t));
        }
        for (double r : {0.1, 1.0, 10.0, 1000.0})
            worst_sector = std::max(worst_sector, resolvent_sector_bound(dec, {0.0, r}));
    }
    std::ostringstream os;
    os << "max_smoothing=" << worst_smooth << " max_sector=" << worst_sector;
    detail = os.str();
    return worst_smooth <= std::exp(-1.0) + 1e-12 && worst_sector <= 1.0 + 1e-8;
}

bool criterion_elliptic(std::string& detail) {
    std::mt19937_64 rng(4242);
    double worst_route = 0.0;
    for (const auto& e : matrix()) {
        auto op = entry_operator(e, 16);
        auto dec = eigendecompose(op);
        for (int rep = 0; rep < 20; ++rep) {
            Polynomial f = random_poly(rng, 5);
            if (e.strong()) f = f * Polynomial{-e.x0, 1.0};
            auto fn = [&](double x) { return f(x); };
            auto sol = solve_elliptic(op, fn);
            Eigen::VectorXd proj = project_datum(fn, op);
            Eigen::VectorXcd res = resolvent_apply(dec, {1.0, 0.0}, proj);
            double scale = std::max(1.0, sol.coefficients.cwiseAbs().maxCoeff());
            worst_route = std::max(
                worst_route, (res.real() - sol.coefficients).cwiseAbs().maxCoeff() / scale);
        }
    }
    // nondegenerate unit load against the exponential-basis reference
    auto profile = make_constant_profile(1.0);
    auto basis = build_basis(2, 32, false, 0.0);
    auto op = assemble(basis, profile, operator_scheme(profile, 2, 32));
    auto sol = solve_elliptic(op, [](double) { return 1.0; });
    auto us = sample_from_coefficients(basis, sol.coefficients);
    double worst_c0 = 0.0;
    for (int g = 0; g <= 200; ++g) {
        double x = g / 200.0;
        worst_c0 = std::max(worst_c0, std::abs(us(x) - beam_load_reference(x)));
    }
    std::ostringstream os;
    os << "worst_route_difference=" << worst_route << " worst_c0_error=" << worst_c0;
    detail = os.str();
    return worst_route <= 1e-8 && worst_c0 <= 1e-6;
}

bool criterion_dichotomy(std::string& detail) {
    auto scheme = build_graded_mesh(0.5, 1.0, 32, 8);
    bool classes_ok = true;
    for (double alpha : {0.25, 0.5, 0.75})
        for (double x0 : {0.0, 0.5, 1.0})
            classes_ok = classes_ok &&
                         classify(make_power_profile(alpha, x0), scheme).kind == Degeneracy::Weak;
    for (double alpha : {1.0, 1.5, 2.0})
        for (double x0 : {0.0, 0.5, 1.0})
            classes_ok = classes_ok &&
                         classify(make_power_profile(alpha, x0), scheme).kind == Degeneracy::Strong;

    bool unpinned_diverges = false;
    auto strong = make_power_profile(1.0, 0.5);
    auto sscheme = operator_scheme(strong, 2, 12);
    try {
        assemble(build_basis(2, 12, false, 0.5), strong, sscheme);
    } catch (const DivergenceError&) {
        unpinned_diverges = true;
    }
    bool pinned_succeeds = false;
    {
        auto op = assemble(build_basis(2, 12, true, 0.5), strong, sscheme);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.weighted_mass);
        pinned_succeeds = es.eigenvalues().minCoeff() > 0.0;
    }
    std::ostringstream os;
    os << "classes_ok=" << classes_ok << " unpinned_diverges=" << unpinned_diverges
       << " pinned_succeeds=" << pinned_succeeds;
    detail = os.str();
    return classes_ok && unpinned_diverges && pinned_succeeds;
}

bool criterion_hardy(std::string& detail) {
    std::mt19937_64 rng(515151);
    double worst = 0.0;
    int fixtures = 0;
    while (fixtures < 100) {
        for (double x0 : {0.0, 0.5, 1.0}) {
            auto profile = make_power_profile(2.0, x0);
            auto scheme = build_graded_mesh(x0, 2.0, 32, 8);
            Polynomial w = Polynomial{0.0, 1.0, -1.0} * random_poly(rng, 4);
            if (x0 == 0.5) w = w * Polynomial{-0.5, 1.0};
            worst = std::max(
                worst, hardy_ratio(FunctionSample::from_polynomial(w, 1), profile, scheme));
            ++fixtures;
        }
    }
    auto unit = hardy_ratio(FunctionSample::from_polynomial(Polynomial{0.0, 1.0, -1.0}, 1),
                            make_power_profile(2.0, 0.0), build_graded_mesh(0.0, 2.0, 32, 8));
    std::ostringstream os;
    os << "worst_ratio=" << worst << " unit_fixture=" << unit << " fixtures=" << fixtures;
    detail = os.str();
    return worst <= 4.0 * 1.05 && std::abs(unit - 1.0) <= 1e-8;
}

bool criterion_derivative_chain(std::string& detail) {
    std::mt19937_64 rng(616161);
    auto scheme = build_graded_mesh(0.5, 1.0, 32, 10);
    bool ok = true;
    double worst = 0.0;
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 25; ++rep) {
            auto u = FunctionSample::from_polynomial(
                Polynomial::clamped(n, random_poly(rng, 6)), n);
            for (int i = 1; i < n; ++i) {
                double lo = integrate([&](double x) { double v = u(x, i); return v * v; }, scheme);
                double hi =
                    integrate([&](double x) { double v = u(x, i + 1); return v * v; }, scheme);
                worst = std::max(worst, lo / hi);
                ok = ok && lo <= hi * (1.0 + 1e-12);
            }
        }
    }
    std::ostringstream os;
    os << "worst_ratio=" << worst;
    detail = os.str();
    return ok;
}

bool criterion_trace_vanishing(std::string& detail) {
    double min_slope = std::numeric_limits<double>::infinity();
    double max_terminal = 0.0;
    for (const auto& e : matrix()) {
        if (!e.strong()) continue;
        auto profile = make_power_profile(e.alpha, e.x0);
        auto basis = build_basis(e.n, 16, e.pin(), e.x0);
        auto op = assemble(basis, profile, operator_scheme(profile, e.n, 16));
        Polynomial f = Polynomial{0.0, 1.0, -1.0} * Polynomial{-e.x0, 1.0};
        auto sol = solve_elliptic(op, [&](double x) { return f(x); });
        auto us = sample_from_coefficients(basis, sol.coefficients);
        auto deltas = default_trace_deltas(e.x0, 4, 16);
        for (int i : {1, 2}) {
            auto tr = boundary_trace_sequence(us, i, profile, deltas);
            min_slope = std::min(min_slope, tr.fitted_exponent);
            max_terminal = std::max(max_terminal, tr.terminal_ratio);
        }
    }
    std::ostringstream os;
    os << "min_fitted_exponent=" << min_slope << " max_terminal_ratio=" << max_terminal;
    detail = os.str();
    return min_slope > 0.25 && max_terminal < 1e-4;
}

bool criterion_cutoff(std::string& detail) {
    double worst_junction = 0.0;
    for (int n = 4; n <= 128; n *= 2) {
        CutoffFunction cut(n, 0.0);
        double inv = 1.0 / n;
        worst_junction = std::max(worst_junction, std::abs(cut(inv, 0)));
        worst_junction = std::max(worst_junction, std::abs(cut(2 * inv, 0) - 1.0));
        worst_junction = std::max(worst_junction, std::abs(cut(1 - 2 * inv, 0) - 1.0));
        worst_junction = std::max(worst_junction, std::abs(cut(1 - inv, 0)));
    }

    std::mt19937_64 rng(717171);
    bool monotone = true;
    double final_worst = 0.0;
    for (double alpha : {0.25, 0.5, 0.75}) {
        auto profile = make_power_profile(alpha, 0.0);
        auto scheme = build_graded_mesh(0.0, alpha, 32, 12);
        for (int rep = 0; rep < 4; ++rep) {
            auto v = FunctionSample::from_polynomial(
                Polynomial::clamped(4, random_poly(rng, 6)), 2);
            double prev_w = std::numeric_limits<double>::infinity();
            double prev_s = std::numeric_limits<double>::infinity();
            TruncationError err{};
            for (int m : {8, 16, 32, 64}) {
                err = truncation_error(v, m, profile, scheme);
                monotone =
                    monotone && err.weighted < prev_w && err.second_derivative < prev_s;
                prev_w = err.weighted;
                prev_s = err.second_derivative;
            }
            final_worst = std::max(final_worst, std::max(err.weighted, err.second_derivative));
        }
    }
    std::ostringstream os;
    os << "worst_junction_defect=" << worst_junction << " monotone=" << monotone
       << " final_worst_error=" << final_worst;
    detail = os.str();
    return worst_junction <= 1e-12 && monotone && final_worst < 1e-3;
}

bool criterion_energy_identity(std::string& detail) {
    double worst = 0.0;
    for (const auto& e : matrix()) {
        auto op = entry_operator(e, 16);
        auto dec = eigendecompose(op);
        Eigen::VectorXd u0 = dec.eigenvectors.col(0) + 0.5 * dec.eigenvectors.col(1) +
                             0.25 * dec.eigenvectors.col(2);
        double T = 0.5 / dec.eigenvalues(2);
        int m = 60;
        auto coarse = evolve(dec, op, u0, T, m);
        auto fine = evolve(dec, op, u0, T, 2 * m);
        double dt = T / m;
        double e0 = coarse.energies.front();
        for (int s = 0; s < m; ++s) {
            double dE = (coarse.energies[s + 1] - coarse.energies[s]) / dt;
            double mid = fine.dissipation[2 * s + 1];
            worst = std::max(worst, std::abs(dE + 2.0 * mid) * dt / e0);
        }
    }
    std::ostringstream os;
    os << "worst_step_defect=" << worst;
    detail = os.str();
    return worst <= 1e-3;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"nondegenerate-sanity", criterion_nondegenerate_sanity},
        {"symmetry-nonnegativity", criterion_symmetry_nonnegativity},
        {"green-formula", criterion_green_formula},
        {"contraction", criterion_contraction},
        {"analyticity-shadow", criterion_analyticity},
        {"elliptic-surjectivity", criterion_elliptic},
        {"weak-strong-dichotomy", criterion_dichotomy},
        {"hardy-inequalities", criterion_hardy},
        {"derivative-chain", criterion_derivative_chain},
        {"trace-vanishing", criterion_trace_vanishing},
        {"cutoff-density", criterion_cutoff},
        {"energy-identity", criterion_energy_identity},
    };

    auto t0 = std::chrono::steady_clock::now();
    int failures = 0;
    int index = 0;
    for (auto& c : criteria) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%s %2d %-24s %s\n", ok ? "PASS" : "FAIL", index, c.name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %d/%d criteria passed in %.1fs\n", failures == 0 ? "OK" : "FAILED",
                static_cast<int>(criteria.size()) - failures,
                static_cast<int>(criteria.size()), secs);
    return failures;
}
