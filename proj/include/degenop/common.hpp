#ifndef DEGENOP_COMMON_HPP
#define DEGENOP_COMMON_HPP

#include <stdexcept>
#include <string>

namespace degenop {

/// Thrown when a weighted integral is detected to be divergent, i.e. the
/// integrand is not in L^1 against the weight 1/a. Carries the location at
/// which the blow-up was seen and, for matrix assembly, the offending pair.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what, double where = 0.0,
                             int j = -1, int k = -1)
        : std::runtime_error(what), location(where), pair_j(j), pair_k(k) {}

    double location;
    int pair_j;
    int pair_k;
};

/// Thrown on non-finite evaluations, failed factorizations and other
/// numerical breakdowns that are not divergence of an improper integral.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the degeneracy classifier when the refinement sequence neither
/// stabilizes nor exceeds the divergence threshold within the budget.
class InconclusiveError : public std::runtime_error {
public:
    explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

namespace limits {

// Integrand values are compared against the integrand's own sup scale; a
// ratio above this threshold signals a non-integrable singularity.
inline constexpr double divergence_ratio = 1e12;

// Quadrature nodes keep at least this distance from the degeneracy point so
// that x0 + d does not round onto x0 itself.
inline constexpr double node_distance_floor = 1e-14;

// Partial integrals of 1/a above this value are declared divergent.
inline constexpr double classify_divergence_threshold = 1e6;

}  // namespace limits

}  // namespace degenop

#endif
