#ifndef DEGENOP_PROFILE_HPP
#define DEGENOP_PROFILE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "degenop/common.hpp"

namespace degenop {

enum class ProfileKind { PowerLaw, Custom };

/// The degenerate coefficient a(x) on [0,1]. Immutable after construction;
/// a(x0) = 0 and a > 0 elsewhere for degenerate profiles. The derivative
/// evaluator is only meaningful away from x0 and must be supplied by the
/// caller for custom profiles (no numerical differentiation happens here).
class DegeneracyProfile {
public:
    using Evaluator = std::function<double(double)>;

    DegeneracyProfile(double x0, Evaluator a, Evaluator a_prime, ProfileKind kind,
                      double alpha = std::numeric_limits<double>::quiet_NaN())
        : x0_(x0), a_(std::move(a)), a_prime_(std::move(a_prime)), kind_(kind), alpha_(alpha) {}

    double x0() const { return x0_; }
    ProfileKind kind() const { return kind_; }
    double alpha() const { return alpha_; }  // NaN unless PowerLaw

    double a(double x) const { return a_(x); }
    double a_prime(double x) const { return a_prime_(x); }

    /// Stable fingerprint used in exported file headers.
    std::string fingerprint() const {
        std::ostringstream os;
        os << std::hexfloat;
        if (kind_ == ProfileKind::PowerLaw)
            os << "power:" << alpha_ << ":" << x0_;
        else
            os << "custom:" << x0_;
        std::size_t h = std::hash<std::string>{}(os.str());
        std::ostringstream hex;
        hex << std::hex << h;
        return hex.str();
    }

private:
    double x0_;
    Evaluator a_;
    Evaluator a_prime_;
    ProfileKind kind_;
    double alpha_;
};

/// a(x) = |x - x0|^alpha. The prototype family for both degeneracy types.
inline DegeneracyProfile make_power_profile(double alpha, double x0) {
    if (!(alpha > 0.0)) throw std::invalid_argument("make_power_profile: alpha must be positive");
    if (!(x0 >= 0.0 && x0 <= 1.0))
        throw std::invalid_argument("make_power_profile: x0 must lie in [0,1]");
    auto a = [alpha, x0](double x) { return std::pow(std::abs(x - x0), alpha); };
    auto ap = [alpha, x0](double x) {
        double d = x - x0;
        return alpha * std::pow(std::abs(d), alpha - 1.0) * (d >= 0.0 ? 1.0 : -1.0);
    };
    return DegeneracyProfile(x0, a, ap, ProfileKind::PowerLaw, alpha);
}

/// Non-degenerate constant coefficient, mostly for sanity fixtures.
inline DegeneracyProfile make_constant_profile(double value, double x0 = 0.0) {
    if (!(value > 0.0)) throw std::invalid_argument("make_constant_profile: value must be positive");
    return DegeneracyProfile(
        x0, [value](double) { return value; }, [](double) { return 0.0; }, ProfileKind::Custom);
}

namespace detail {

struct HermiteTable {
    std::vector<double> x, a, ap;

    double eval(double t, int deriv) const {
        // cubic Hermite on the bracketing interval, C^1 across knots
        std::size_t n = x.size();
        std::size_t i = 0;
        while (i + 2 < n && t > x[i + 1]) ++i;
        double h = x[i + 1] - x[i];
        double s = (t - x[i]) / h;
        double h00 = 2 * s * s * s - 3 * s * s + 1;
        double h10 = s * s * s - 2 * s * s + s;
        double h01 = -2 * s * s * s + 3 * s * s;
        double h11 = s * s * s - s * s;
        if (deriv == 0)
            return h00 * a[i] + h10 * h * ap[i] + h01 * a[i + 1] + h11 * h * ap[i + 1];
        double d00 = (6 * s * s - 6 * s) / h;
        double d10 = (3 * s * s - 4 * s + 1);
        double d01 = (-6 * s * s + 6 * s) / h;
        double d11 = (3 * s * s - 2 * s);
        return d00 * a[i] + d10 * ap[i] + d01 * a[i + 1] + d11 * ap[i + 1];
    }
};

}  // namespace detail

/// Piecewise-cubic Hermite profile from a monotone (x, a, a') table. The
/// degeneracy point is the unique table row with a = 0; the interpolant is
/// pinned there exactly.
inline DegeneracyProfile make_custom_profile(const std::vector<std::array<double, 3>>& table) {
    if (table.size() < 2) throw std::invalid_argument("custom profile: need at least two rows");
    auto t = std::make_shared<detail::HermiteTable>();
    int zero_row = -1;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0 && !(table[i][0] > table[i - 1][0]))
            throw std::invalid_argument("custom profile: x grid must be strictly increasing");
        if (table[i][1] < 0.0)
            throw std::invalid_argument("custom profile: coefficient values must be nonnegative");
        if (table[i][1] == 0.0) {
            if (zero_row >= 0) throw std::invalid_argument("custom profile: multiple zeros of a");
            zero_row = static_cast<int>(i);
        }
        t->x.push_back(table[i][0]);
        t->a.push_back(table[i][1]);
        t->ap.push_back(table[i][2]);
    }
    if (zero_row < 0) throw std::invalid_argument("custom profile: no row with a = 0");
    double x0 = t->x[static_cast<std::size_t>(zero_row)];
    auto a = [t, x0](double x) {
        if (x == x0) return 0.0;
        return std::max(t->eval(x, 0), 0.0);
    };
    auto ap = [t](double x) { return t->eval(x, 1); };
    return DegeneracyProfile(x0, a, ap, ProfileKind::Custom);
}

/// Parses {"kind":"power","alpha":..,"x0":..} or {"kind":"custom","table":[[x,a,a'],..]}.
inline DegeneracyProfile profile_from_json(const nlohmann::json& j) {
    if (!j.contains("kind")) throw std::invalid_argument("profile: missing \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        return make_power_profile(j.at("alpha").get<double>(), j.at("x0").get<double>());
    }
    if (kind == "custom") {
        std::vector<std::array<double, 3>> table;
        for (const auto& row : j.at("table")) {
            if (row.size() != 3) throw std::invalid_argument("profile: table rows must be [x,a,a']");
            table.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
        return make_custom_profile(table);
    }
    if (kind == "constant") {
        return make_constant_profile(j.value("value", 1.0));
    }
    throw std::invalid_argument("profile: unknown kind \"" + kind + "\"");
}

inline nlohmann::json profile_to_json(const DegeneracyProfile& p) {
    nlohmann::json j;
    if (p.kind() == ProfileKind::PowerLaw) {
        j["kind"] = "power";
        j["alpha"] = p.alpha();
        j["x0"] = p.x0();
    } else {
        j["kind"] = "custom";
        j["x0"] = p.x0();
    }
    return j;
}

}  // namespace degenop

#endif
