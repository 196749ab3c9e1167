#pragma once

#include <span>
#include <vector>

#include "ecir/coefficient.hpp"

namespace ecir {

// Extended CIR short-rate model
//
//   dr_s = 2 k(s) (theta(s) - r_s) ds + 2 sigma(s) sqrt(r_s) dW_s
//
// with integer dimension d = 2 k theta / sigma^2. theta is never stored:
// the drift is always evaluated as (d sigma(s)^2 - 2 k(s) r) ds, which stays
// well defined when k vanishes.
struct ECIRModel {
    CoefficientFunction k;
    CoefficientFunction sigma;
    int d = 1;
    double r0 = 0.0;
};

struct PricingWindow {
    double t = 0.0;
    double T = 0.0;
    double tau() const { return T - t; }
};

// Precomputed antiderivative K(x) = \int_0^x k(u) du on a uniform grid over
// [0, horizon], composite Gauss-Legendre per cell, linear interpolation
// between nodes. Built once, then read-only.
class DriftIntegralCache {
public:
    DriftIntegralCache(const CoefficientFunction& k, double horizon, int cells = 2048);

    double integral(double x) const;                 // K(x)
    double integral_between(double a, double b) const;  // K(b) - K(a)
    double horizon() const { return horizon_; }

private:
    double horizon_ = 0.0;
    double cell_width_ = 0.0;
    std::vector<double> prefix_;  // K at grid nodes
    std::vector<double> k_at_nodes_;
    bool zero_ = true;
};

// Shared per-(model, horizon) evaluation context for the series machinery.
class ModelContext {
public:
    ModelContext(const ECIRModel& model, double horizon, int cache_cells = 2048);

    const ECIRModel& model() const { return model_; }
    double horizon() const { return horizon_; }
    const DriftIntegralCache& drift_cache() const { return cache_; }

    // kappa_tilde(a, b) = \int_{a v b}^T exp(-\int_a^s k - \int_b^s k) ds,
    // evaluated as exp(K(a) + K(b)) \int_{a v b}^T exp(-2 K(s)) ds, which is
    // symmetric in (a, b) by construction. Reduces to T - max(a, b) for k = 0.
    double kappa_tilde(double a, double b) const;

    // \int_t^T exp(-2 \int_t^s k(u) du) ds, the discount-exponent time factor
    // multiplying r_t in the bond price.
    double time_factor(double t) const;

private:
    ECIRModel model_;
    double horizon_;
    DriftIntegralCache cache_;
};

// Free-function form used across the library and tests.
double kappa_tilde(double a, double b, double T, const ECIRModel& model);

// One Ornstein-Uhlenbeck path value at time t from the explicit solution
//   X_t = x0 e^{-K(t)} + \sum_j e^{-(K(t) - K(u_j))} sigma(u_j) dW_j
// discretized on a uniform noise grid (u_j left endpoints, dW increments).
// x0 = sqrt(r0 / d).
double ou_path_x(double t, const ECIRModel& model, std::span<const double> brownian_increments);

}  // namespace ecir
