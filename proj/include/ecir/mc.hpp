#pragma once

#include <cstdint>

#include "ecir/model.hpp"

namespace ecir {

enum class McScheme {
    DirectSde,  // full-truncation Euler on the rate SDE
    OuSum,      // d squared Ornstein-Uhlenbeck paths, Euler per component
};

struct McConfig {
    std::int64_t paths = 1'000'000;
    int steps = 400;
    std::uint64_t seed = 12345;
    McScheme scheme = McScheme::DirectSde;
    // Paths are split into this many fixed chunks; partial sums combine in
    // chunk order, so the estimate is bit-reproducible for any thread count.
    int chunks = 64;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample stddev / sqrt(paths)
    std::int64_t paths = 0;
};

// Monte-Carlo bond price E[exp(-\int_t^T r ds) | r_t = r_start].
//
// direct-sde: r_{j+1} = r_j + (d sigma^2 - 2 k r_j^+) dt + 2 sigma sqrt(r_j^+) dW,
// r^+ = max(r, 0); the running integral uses the trapezoid rule on r^+.
// ou-sum: r = sum of d squared OU components, each stepped by Euler with an
// independent increment. Per-path RNG streams are keyed by (seed, path).
McEstimate mc_price(const PricingWindow& window, const ECIRModel& model, double r_start,
                    const McConfig& cfg);

}  // namespace ecir
