#pragma once

#include <functional>
#include <span>

#include "ecir/model.hpp"

namespace ecir {

// Evaluator for the n-variable polynomials G_n^m appearing in the frozen
// iterated-derivative expansion of the discount functional.
//
// The recurrences delete variables, so the complete state space for one node
// tuple is (subset of active variables, m); values are memoized over that
// space. Kernel sums run over ordered sequences of distinct indices: a
// length-k sequence closes a (k+1)-cycle through the distinguished variable
// in the m = 0 recurrence (coefficient (-1)^{k+1} 2^{2k+1}), and bridges an
// unordered end pair {i, j} in the m >= 1 recurrence (coefficient
// (-1)^{k+1} 2^{2k+5}); sequence enumeration makes those printed coefficients
// count every distinct cycle/chain exactly once, which the symbolic oracle
// confirms term-by-term through n = 4.
class GnmEvaluator {
public:
    static constexpr int kDefaultMaxOrder = 6;

    explicit GnmEvaluator(int max_order = kDefaultMaxOrder);

    // Configured cap on n. Recursion cost grows exponentially with n.
    int max_order() const { return max_order_; }

    // Constant-drift (k = 0) value of G_n^m at the given nodes; kernels are
    // T - max(a, b). Returns 0 when m > n.
    double g_const(int n, int m, std::span<const double> nodes, double T) const;

    // Time-dependent drift value of G_n^m(t, s_1..s_n); kernels are
    // kappa_tilde. The m = 0 leading term uses the two-equal-argument kernel
    // kappa_tilde(s, s) (the frozen second derivative at one time), and the
    // chain ends use kappa_tilde(s, t).
    double g_timedep(int n, int m, double t, std::span<const double> nodes,
                     const ModelContext& ctx) const;

    // Shared implementation over explicit kernels: node_kernel(i, j) for
    // i, j in [0, n), end_kernel(i) for the chain-end factors.
    double evaluate(int n, int m, std::span<const double> node_kernel,
                    std::span<const double> end_kernel) const;

private:
    int max_order_;
};

}  // namespace ecir
