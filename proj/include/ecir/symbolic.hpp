#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ecir/model.hpp"
#include "ecir/rational.hpp"

namespace ecir {

// Brute-force ground truth for the G_n^m engine: iterated Malliavin
// differentiation of F = e^Y performed symbolically at the term-algebra
// level, then frozen to kernel values and collected by powers of X_t.
//
// A factor is a Malliavin derivative of Y of order one or two; derivatives
// of order three and higher vanish because Y is quadratic in the driving
// path, so a factor carries one or two time-variable indices.
struct DerivativeFactor {
    int i = 0;   // first index (1-based variable id)
    int j = -1;  // second index, or -1 for a first-order factor

    friend auto operator<=>(const DerivativeFactor&, const DerivativeFactor&) = default;
};

// A product of derivative factors with an exact coefficient. The factor list
// is kept sorted; equal factor lists merge during differentiation.
struct DerivativeTerm {
    Rational coefficient;
    std::vector<DerivativeFactor> factors;
};

// Classification of one term's factors against the partition catalog:
// singletons, self-pairs, doubled-edge pairs, simple cycles, simple chains.
struct PartitionBlock {
    enum class Case { Singleton = 1, SelfPair = 2, Pair = 3, Cycle = 4, Chain = 5 };
    Case kind;
    std::vector<int> indices;
};

struct PartitionShape {
    std::vector<PartitionBlock> blocks;
    // Product of the per-block prefactors (2 for a doubled-edge pair, 2^k for
    // k-cycles and k-vertex chains); must equal the term's coefficient.
    Rational predicted_coefficient;
};

// Complete expansion of D^2_{s_n} ... D^2_{s_1} F / F as a term list, exact
// coefficients. 1 <= n <= 4; term counts grow roughly factorially.
std::vector<DerivativeTerm> differentiate(int n);

// Substitutes the frozen derivative values
//   D_{s_i} Y      -> -2 kappa(s_i, t)   sigma(s_i) X_t
//   D_{s_i s_j} Y  -> -2 kappa(s_i, s_j) sigma(s_i) sigma(s_j)
// and collects coefficients of X_t^{2m}. The product of sigma(s_i)^2 is
// divided out symbolically (never multiplied in), so the result is the
// sigma-independent coefficient list {G_n^m}_{m=0..n}.
std::vector<double> freeze_and_collect(std::span<const DerivativeTerm> terms, double t,
                                       std::span<const double> nodes,
                                       const std::function<double(double, double)>& kappa);

// k = 0 and time-dependent conveniences.
std::vector<double> freeze_and_collect_const(std::span<const DerivativeTerm> terms,
                                             std::span<const double> nodes, double T);
std::vector<double> freeze_and_collect_timedep(std::span<const DerivativeTerm> terms, double t,
                                               std::span<const double> nodes,
                                               const ModelContext& ctx);

// Decomposes a term into partition blocks and checks the predicted
// coefficient. Throws std::logic_error on an unclassifiable factor graph.
PartitionShape classify(const DerivativeTerm& term);

// Human-readable term list, one `coefficient * factors` line per term,
// stable order for golden-file diffing.
void dump_terms(std::span<const DerivativeTerm> terms, std::ostream& os);

}  // namespace ecir
