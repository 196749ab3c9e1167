#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ecir/expression.hpp"

namespace ecir {

// Time-dependent model coefficient (drift rate k or volatility sigma) on
// [0, T]. Carries a uniform bound M used by the truncation-error estimate.
class CoefficientFunction {
public:
    CoefficientFunction() = default;

    static CoefficientFunction zero();
    static CoefficientFunction constant(double c);
    // Named presets: "zero", "const:<v>", "linear_decay" (T - s),
    // "exp_decay" (exp(-s)), "sin" (sin s). Anything else is parsed as an
    // expression in s. The horizon T is needed to resolve linear_decay and
    // to bound expression-backed coefficients by sampling.
    static CoefficientFunction parse(const std::string& spec, double horizon);

    // Finite-checked evaluation; throws EvaluationError on non-finite values.
    double operator()(double s) const;

    double bound() const { return bound_; }
    bool is_identically_zero() const { return identically_zero_; }
    const std::string& kind() const { return kind_; }

private:
    std::function<double(double)> eval_;
    double bound_ = 0.0;
    bool identically_zero_ = true;
    std::string kind_ = "zero";
};

}  // namespace ecir
