#ifndef SPINDISCORD_ERRORS_HPP
#define SPINDISCORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spindiscord {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A stated precondition was violated (e.g. a G-table missing entries).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature exhausted its panel budget.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Iterative eigensolver failed to reach the requested residual.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), best_residual(residual) {}
    double best_residual;
};

// An internal cross-check failed; indicates a bug upstream, not bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// range_ratio with a vanishing first-distance value.
struct UndefinedRatioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spindiscord

#endif
