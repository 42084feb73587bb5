// Command line front end: classification, spectra, elliptic and parabolic
// solves, the cutoff density demo and the verification battery, with CSV and
// JSON output suitable for regression diffing.

#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "degenop/degenop.hpp"

namespace {

using namespace degenop;
using nlohmann::json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitDivergence = 4;
constexpr int kExitNumerical = 5;

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> n, N, cells, nodes, steps, grid;
    std::optional<double> alpha, x0, T, lam;
    std::optional<std::string> pin, f, u0, inject_fault;
    std::string section;
    int eigenfunctions = 0;

    RunConfig resolve() const {
        RunConfig c;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path);
            json j = json::parse(in);  // throws on malformed input
            c = RunConfig::from_json(j);
        }
        if (seed) c.seed = *seed;
        if (n) c.n = *n;
        if (N) c.N = *N;
        if (cells) c.cells = *cells;
        if (nodes) c.nodes = *nodes;
        if (steps) c.steps = *steps;
        if (grid) c.grid = *grid;
        if (T) c.T = *T;
        if (lam) c.lam = *lam;
        if (pin) c.pin = *pin;
        if (f) c.f = *f;
        if (u0) c.u0 = *u0;
        if (inject_fault) c.inject_fault = *inject_fault;
        if (alpha || x0) {
            double a = alpha ? *alpha : 0.5;
            double p = x0 ? *x0 : 0.5;
            c.profile_spec = {{"kind", "power"}, {"alpha", a}, {"x0", p}};
        }
        c.validate();
        return c;
    }

    std::filesystem::path out(const std::string& name) const {
        std::filesystem::create_directories(out_dir);
        return std::filesystem::path(out_dir) / name;
    }
};

struct Workspace {
    DegeneracyProfile profile;
    QuadratureScheme scheme;
    bool pinned;
    BasisSet basis;
    AssembledOperator op;
};

Workspace make_workspace(const RunConfig& c) {
    auto profile = c.profile();
    auto scheme = c.scheme(profile);
    bool pin = c.resolve_pin(profile, scheme);
    auto basis = build_basis(c.n, c.N, pin, profile.x0());
    auto op = assemble(basis, profile, scheme);
    if (c.inject_fault == "negate-stiffness-entry") op.stiffness(0, 1) = -op.stiffness(0, 1);
    return Workspace{profile, scheme, pin, basis, op};
}

std::vector<double> sample_grid(int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

int cmd_classify(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto profile = c.profile();
    auto scheme = build_graded_mesh(profile.x0(),
                                    profile.kind() == ProfileKind::PowerLaw ? profile.alpha() : 1.0,
                                    c.cells > 0 ? c.cells : 32, c.nodes > 0 ? c.nodes : 8);
    auto cls = classify(profile, scheme);
    json out;
    out["class"] = cls.kind == Degeneracy::Weak
                       ? "weak"
                       : (cls.kind == Degeneracy::Strong ? "strong" : "nondegenerate");
    out["divergent"] = cls.divergent;
    if (!cls.divergent) out["integral_estimate"] = cls.integral_estimate;
    if (cls.kind != Degeneracy::NonDegenerate) {
        auto rep = check_hypothesis_33(profile);
        out["pointwise_bound"] = {{"ok", rep.bound_ok},
                                  {"monotone_ok", rep.monotone_ok},
                                  {"samples_used", rep.samples_used}};
        if (rep.bound_ok) {
            out["pointwise_bound"]["k_exponent"] = rep.k_exponent;
            out["pointwise_bound"]["k_constant"] = rep.k_constant;
            out["k_exponent"] = rep.k_exponent;
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_quadrature_selftest(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto profile = c.profile();
    Polynomial fixture = Polynomial::clamped(c.n, Polynomial{1.0});
    auto scheme0 = c.scheme(profile);
    bool pin = c.resolve_pin(profile, scheme0);
    if (pin) fixture = fixture * Polynomial{-profile.x0(), 1.0};
    auto u = FunctionSample::from_polynomial(fixture, 0);

    CsvWriter csv(opt.out("quadrature_selftest.csv").string(), {"level", "cells", "value"});
    int base = c.cells > 0 ? c.cells : 32;
    double hint = profile.kind() == ProfileKind::PowerLaw ? profile.alpha() : 1.0;
    double last = 0.0;
    for (int level = 0; level <= 5; ++level) {
        int cells = base << level;
        auto scheme = build_graded_mesh(profile.x0(), hint, cells, c.nodes > 0 ? c.nodes : 8);
        last = integrate_weighted([&](double x) { double v = u(x); return v * v; }, profile,
                                  scheme);
        csv.row({static_cast<double>(level), static_cast<double>(cells), last});
    }
    std::cout << "selftest_value=" << std::setprecision(17) << last << "\n";
    return 0;
}

int cmd_spectrum(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto ws = make_workspace(c);
    auto dec = eigendecompose(ws.op);

    CsvWriter csv(opt.out("spectrum.csv").string(), {"k", "lambda"});
    for (int k = 0; k < dec.size(); ++k)
        csv.row({static_cast<double>(k + 1), dec.eigenvalues(k)});

    if (opt.eigenfunctions > 0) {
        int count = std::min(opt.eigenfunctions, dec.size());
        std::vector<std::string> cols{"x"};
        for (int k = 1; k <= count; ++k) cols.push_back("v" + std::to_string(k));
        CsvWriter efs(opt.out("eigenfunctions.csv").string(), cols);
        std::vector<FunctionSample> funcs;
        for (int k = 0; k < count; ++k)
            funcs.push_back(sample_from_coefficients(ws.basis, dec.eigenvectors.col(k)));
        for (double x : sample_grid(c.grid)) {
            std::vector<double> row{x};
            for (const auto& fn : funcs) row.push_back(fn(x));
            efs.row(row);
        }
    }
    std::cout << "lambda1=" << std::setprecision(17) << dec.eigenvalues(0)
              << " lambda2=" << dec.eigenvalues(std::min(1, dec.size() - 1))
              << " pinned=" << (ws.pinned ? "true" : "false") << "\n";
    return 0;
}

int cmd_solve(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto ws = make_workspace(c);
    if (c.f == "zero") throw std::invalid_argument("solve: need a nonzero load expression");
    Expression f(c.f);
    auto sol = solve_elliptic(ws.op, [&](double x) { return f(x, 0.0); });
    auto us = sample_from_coefficients(ws.basis, sol.coefficients);

    CsvWriter csv(opt.out("solution.csv").string(), {"x", "u"});
    for (double x : sample_grid(c.grid)) csv.row({x, us(x)});
    std::cout << "residual=" << std::setprecision(17) << sol.residual_weighted
              << " load_norm=" << sol.load_weighted_norm << " pinned="
              << (ws.pinned ? "true" : "false") << "\n";
    return 0;
}

int cmd_evolve(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto ws = make_workspace(c);
    auto dec = eigendecompose(ws.op);

    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(dec.size());
    if (!c.u0.empty()) {
        Expression g(c.u0);
        u0 = project_datum([&](double x) { return g(x, 0.0); }, ws.op);
    }
    std::function<double(double, double)> forcing = nullptr;
    if (c.f != "zero") {
        auto expr = std::make_shared<Expression>(c.f);
        forcing = [expr](double t, double x) { return (*expr)(x, t); };
    }
    auto trace = evolve(dec, ws.op, u0, c.T, c.steps, forcing);

    auto grid = sample_grid(c.grid);
    std::vector<std::string> cols{"t"};
    for (double x : grid) {
        std::ostringstream os;
        os << "u@" << std::setprecision(6) << x;
        cols.push_back(os.str());
    }
    cols.push_back("energy");
    cols.push_back("dissipation");
    CsvWriter csv(opt.out("evolution.csv").string(), cols);
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        auto u = sample_from_coefficients(ws.basis, trace.states[s]);
        std::vector<double> row{trace.times[s]};
        for (double x : grid) row.push_back(u(x));
        row.push_back(trace.energies[s]);
        row.push_back(trace.dissipation[s]);
        csv.row(row);
    }
    bool nonincreasing = true;
    if (c.f == "zero") {
        for (std::size_t s = 1; s < trace.energies.size(); ++s)
            nonincreasing =
                nonincreasing && trace.energies[s] <= trace.energies[s - 1] * (1.0 + 1e-12);
    }
    std::cout << "final_energy=" << std::setprecision(17) << trace.energies.back();
    if (c.f == "zero")
        std::cout << " energy_nonincreasing=" << (nonincreasing ? "true" : "false");
    std::cout << "\n";
    return 0;
}

int cmd_density(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    auto profile = c.profile();
    auto scheme = build_graded_mesh(profile.x0(),
                                    profile.kind() == ProfileKind::PowerLaw ? profile.alpha() : 1.0,
                                    c.cells > 0 ? c.cells : 32, c.nodes > 0 ? c.nodes : 12);
    auto v = FunctionSample::from_polynomial(Polynomial::clamped(4, Polynomial{1.0}), 2);

    CsvWriter csv(opt.out("density.csv").string(),
                  {"n", "weighted_error", "second_derivative_error"});
    double last_w = 0.0, last_s = 0.0;
    for (int m : {8, 16, 32, 64}) {
        auto err = truncation_error(v, m, profile, scheme);
        csv.row({static_cast<double>(m), err.weighted, err.second_derivative});
        last_w = err.weighted;
        last_s = err.second_derivative;
    }
    std::cout << "weighted_error=" << std::setprecision(17) << last_w
              << " second_derivative_error=" << last_s << "\n";
    return 0;
}

int cmd_verify(const CliOptions& opt) {
    RunConfig c = opt.resolve();
    VerifyOptions vo;
    vo.seed = c.seed;
    vo.N = c.N;
    vo.cells = c.cells;
    vo.nodes = c.nodes;
    vo.section = opt.section;
    vo.inject_fault = c.inject_fault;
    auto report = run_verification(vo);
    std::cout << report.to_json().dump(2) << "\n";
    if (!report.overall()) {
        std::cerr << "failing checks:";
        for (const auto& ck : report.checks)
            if (!ck.pass) std::cerr << " " << ck.id;
        std::cerr << "\n";
        return kExitVerifyFailed;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degenerate high-order operators in weighted spaces: spectra, semigroups "
                 "and verification"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON configuration file");
    app.add_option("--out", opt.out_dir, "output directory for CSV files");
    auto add_common = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
            "--seed", [&opt](const std::string& v) { opt.seed = std::stoull(v); }, "RNG seed");
        sub->add_option_function<int>("--n", [&opt](const int& v) { opt.n = v; },
                                      "operator half-order (>= 2)");
        sub->add_option_function<int>("--N", [&opt](const int& v) { opt.N = v; }, "basis size");
        sub->add_option_function<double>("--alpha", [&opt](const double& v) { opt.alpha = v; },
                                         "power profile exponent");
        sub->add_option_function<double>("--x0", [&opt](const double& v) { opt.x0 = v; },
                                         "degeneracy point");
        sub->add_option_function<std::string>("--pin", [&opt](const std::string& v) { opt.pin = v; },
                                              "pin the basis at x0: auto|on|off");
        sub->add_option_function<int>("--cells", [&opt](const int& v) { opt.cells = v; },
                                      "quadrature backbone cells");
        sub->add_option_function<int>("--nodes", [&opt](const int& v) { opt.nodes = v; },
                                      "Gauss nodes per cell");
        sub->add_option_function<int>("--grid", [&opt](const int& v) { opt.grid = v; },
                                      "output sample points");
        sub->add_option_function<std::string>(
            "--inject-fault", [&opt](const std::string& v) { opt.inject_fault = v; }, "test hook");
    };

    auto* c_classify = app.add_subcommand("classify", "degeneracy type of the coefficient");
    add_common(c_classify);
    auto* c_selftest =
        app.add_subcommand("quadrature-selftest", "weighted quadrature refinement table");
    add_common(c_selftest);
    auto* c_spectrum = app.add_subcommand("spectrum", "generalized eigenvalues and modes");
    add_common(c_spectrum);
    c_spectrum->add_option("--eigenfunctions", opt.eigenfunctions,
                           "also sample the first K eigenfunctions");
    auto* c_solve = app.add_subcommand("solve", "stationary problem (I + A) u = f");
    add_common(c_solve);
    c_solve->add_option_function<std::string>(
        "--f", [&opt](const std::string& v) { opt.f = v; }, "load expression in x");
    auto* c_evolve = app.add_subcommand("evolve", "parabolic evolution u' + A u = f");
    add_common(c_evolve);
    c_evolve->add_option_function<std::string>(
        "--f", [&opt](const std::string& v) { opt.f = v; }, "forcing expression in x and t, or zero");
    c_evolve->add_option_function<std::string>(
        "--u0", [&opt](const std::string& v) { opt.u0 = v; }, "initial datum expression in x");
    c_evolve->add_option_function<double>("--T", [&opt](const double& v) { opt.T = v; },
                                          "time horizon");
    c_evolve->add_option_function<int>("--steps", [&opt](const int& v) { opt.steps = v; },
                                       "time steps");
    auto* c_density = app.add_subcommand("density-demo", "cutoff truncation error table");
    add_common(c_density);
    auto* c_verify = app.add_subcommand("verify", "run the property battery");
    add_common(c_verify);
    c_verify->add_option("section", opt.section,
                         "restrict to one module: profiles|spaces|galerkin|spectral|solver|density");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(opt);
        if (c_selftest->parsed()) return cmd_quadrature_selftest(opt);
        if (c_spectrum->parsed()) return cmd_spectrum(opt);
        if (c_solve->parsed()) return cmd_solve(opt);
        if (c_evolve->parsed()) return cmd_evolve(opt);
        if (c_density->parsed()) return cmd_density(opt);
        if (c_verify->parsed()) return cmd_verify(opt);
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
