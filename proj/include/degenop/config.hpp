#ifndef DEGENOP_CONFIG_HPP
#define DEGENOP_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "degenop/classify.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"

namespace degenop {

/// Run parameters shared by the command line tools. The profile block is
/// kept verbatim so configurations round-trip losslessly.
struct RunConfig {
    nlohmann::json profile_spec = {{"kind", "power"}, {"alpha", 0.5}, {"x0", 0.5}};
    int n = 2;
    int N = 24;
    std::string pin = "auto";  // "auto", "on" or "off"
    int cells = 0;             // 0: derived from N
    int nodes = 0;             // 0: derived from n
    double T = 1e-2;
    int steps = 50;
    double lam = 1.0;
    std::uint64_t seed = 12345;
    std::string f = "zero";   // "zero" or an expression in x and t
    std::string u0 = "";      // expression in x; empty means zero
    int grid = 41;            // output sample points
    std::string inject_fault = "";  // test hook, e.g. "negate-stiffness-entry"

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        if (j.contains("profile")) c.profile_spec = j.at("profile");
        c.n = j.value("n", c.n);
        c.N = j.value("N", c.N);
        c.pin = j.value("pin", c.pin);
        if (j.contains("quadrature")) {
            c.cells = j.at("quadrature").value("cells", 0);
            c.nodes = j.at("quadrature").value("nodes", 0);
        }
        c.T = j.value("T", c.T);
        c.steps = j.value("steps", c.steps);
        c.lam = j.value("lam", c.lam);
        c.seed = j.value("seed", c.seed);
        c.f = j.value("f", c.f);
        c.u0 = j.value("u0", c.u0);
        c.grid = j.value("grid", c.grid);
        c.inject_fault = j.value("inject_fault", c.inject_fault);
        c.validate();
        return c;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"profile", profile_spec},
                              {"n", n},
                              {"N", N},
                              {"pin", pin},
                              {"quadrature", {{"cells", cells}, {"nodes", nodes}}},
                              {"T", T},
                              {"steps", steps},
                              {"lam", lam},
                              {"seed", seed},
                              {"f", f},
                              {"u0", u0},
                              {"grid", grid},
                              {"inject_fault", inject_fault}};
    }

    void validate() const {
        if (n < 2) throw std::invalid_argument("config: half-order n must be >= 2");
        if (N < 4) throw std::invalid_argument("config: basis size N must be >= 4");
        if (pin != "auto" && pin != "on" && pin != "off")
            throw std::invalid_argument("config: pin must be auto, on or off");
        if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
        if (grid < 2) throw std::invalid_argument("config: grid must be >= 2");
        if (!(T > 0.0)) throw std::invalid_argument("config: horizon T must be positive");
    }

    DegeneracyProfile profile() const { return profile_from_json(profile_spec); }

    QuadratureScheme scheme(const DegeneracyProfile& p) const {
        return operator_scheme(p, n, N, cells, nodes);
    }

    /// "auto" pins exactly when the coefficient is strongly degenerate at an
    /// interior point, which is when the unpinned basis leaves the weighted
    /// space.
    bool resolve_pin(const DegeneracyProfile& p, const QuadratureScheme& s) const {
        if (pin == "on") return true;
        if (pin == "off") return false;
        if (!(p.x0() > 0.0 && p.x0() < 1.0)) return false;
        auto cls = classify(p, s);
        return cls.kind == Degeneracy::Strong;
    }
};

}  // namespace degenop

#endif
