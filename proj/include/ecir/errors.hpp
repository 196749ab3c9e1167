#pragma once

#include <stdexcept>
#include <string>

namespace ecir {

// Configuration / input problems: bad config text, unknown keys, constraint
// violations, unparsable coefficient expressions. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Work-size problems: order cap exceeded, quadrature evaluation budget
// exceeded. CLI exit code 3.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A coefficient function returned a non-finite value, or an integrand blew up.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

// The truncated series left the convergent regime (A0 <= 0).
struct SeriesDivergenceError : std::runtime_error {
    explicit SeriesDivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ecir
