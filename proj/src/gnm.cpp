#include "ecir/gnm.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

// Memoized recursion over (active-variable bitmask, m).
struct Workspace {
    int n;
    const double* ker;  // n x n, row-major; ker[i*n+j] = kernel(s_i, s_j)
    const double* end;  // end[i] = kernel(s_i, t)
    std::vector<double> memo;

    Workspace(int n_, const double* ker_, const double* end_)
        : n(n_), ker(ker_), end(end_),
          memo(static_cast<std::size_t>(1u << n_) * (n_ + 1),
               std::numeric_limits<double>::quiet_NaN()) {}

    double kernel(int i, int j) const { return ker[i * n + j]; }

    double get(unsigned mask, int m) {
        if (m > std::popcount(mask)) return 0.0;
        if (mask == 0) return m == 0 ? 1.0 : 0.0;
        double& slot = memo[static_cast<std::size_t>(mask) * (n + 1) + m];
        if (std::isnan(slot)) slot = compute(mask, m);
        return slot;
    }

    // (-1)^{k+1} for sequence length k.
    static double seq_sign(int k) { return (k % 2 == 0) ? -1.0 : 1.0; }

    // Ordered sequences extending a cycle through the distinguished index p.
    // `cur` is the last vertex on the path, `avail` the unused variables.
    double cycles_from(int p, int cur, unsigned avail, double prod, int len) {
        double total = seq_sign(len) * std::ldexp(prod * kernel(cur, p), 2 * len + 1) * get(avail, 0);
        for (unsigned rest = avail; rest != 0;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            total += cycles_from(p, v, avail & ~(1u << v), prod * kernel(cur, v), len + 1);
        }
        return total;
    }

    // Ordered interior sequences of the chain i -> ... -> j, both ends
    // carrying an end kernel.
    double chains_from(int j, int cur, unsigned avail, double prod, int len, int m) {
        double total =
            seq_sign(len) * std::ldexp(prod * kernel(cur, j) * end[j], 2 * len + 5) * get(avail, m - 1);
        for (unsigned rest = avail; rest != 0;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            total += chains_from(j, v, avail & ~(1u << v), prod * kernel(cur, v), len + 1, m);
        }
        return total;
    }

    double compute(unsigned mask, int m) {
        if (m == 0) {
            const int p = 31 - std::countl_zero(mask);
            const unsigned rest = mask & ~(1u << p);
            double val = -2.0 * kernel(p, p) * get(rest, 0);
            for (unsigned bits = rest; bits != 0;) {
                const int v = std::countr_zero(bits);
                bits &= bits - 1;
                val += cycles_from(p, v, rest & ~(1u << v), kernel(p, v), 1);
            }
            return val;
        }
        double val = 0.0;
        for (unsigned bits = mask; bits != 0;) {
            const int i = std::countr_zero(bits);
            bits &= bits - 1;
            val += 4.0 * end[i] * end[i] * get(mask & ~(1u << i), m - 1);
        }
        for (unsigned bi = mask; bi != 0;) {
            const int i = std::countr_zero(bi);
            bi &= bi - 1;
            for (unsigned bj = bi; bj != 0;) {
                const int j = std::countr_zero(bj);
                bj &= bj - 1;
                val += chains_from(j, i, mask & ~(1u << i) & ~(1u << j), end[i], 0, m);
            }
        }
        return val / m;
    }
};

}  // namespace

GnmEvaluator::GnmEvaluator(int max_order) : max_order_(max_order) {
    if (max_order < 0 || max_order > 20) throw ConfigError("GnmEvaluator: max_order must be in [0, 20]");
}

double GnmEvaluator::evaluate(int n, int m, std::span<const double> node_kernel,
                              std::span<const double> end_kernel) const {
    if (m < 0) throw ConfigError("GnmEvaluator: m must be >= 0");
    if (m > n) return 0.0;
    if (n > max_order_) {
        std::ostringstream os;
        os << "GnmEvaluator: n=" << n << " exceeds the configured cap " << max_order_;
        throw CapacityError(os.str());
    }
    if (n == 0) return 1.0;
    Workspace ws(n, node_kernel.data(), end_kernel.data());
    return ws.get((1u << n) - 1u, m);
}

double GnmEvaluator::g_const(int n, int m, std::span<const double> nodes, double T) const {
    if (static_cast<int>(nodes.size()) != n) throw ConfigError("g_const: nodes length must equal n");
    std::vector<double> ker(static_cast<std::size_t>(n) * n);
    std::vector<double> end(n);
    for (int i = 0; i < n; ++i) {
        end[i] = T - nodes[i];
        for (int j = 0; j < n; ++j) ker[i * n + j] = T - std::max(nodes[i], nodes[j]);
    }
    return evaluate(n, m, ker, end);
}

double GnmEvaluator::g_timedep(int n, int m, double t, std::span<const double> nodes,
                               const ModelContext& ctx) const {
    if (static_cast<int>(nodes.size()) != n) throw ConfigError("g_timedep: nodes length must equal n");
    std::vector<double> ker(static_cast<std::size_t>(n) * n);
    std::vector<double> end(n);
    for (int i = 0; i < n; ++i) {
        end[i] = ctx.kappa_tilde(nodes[i], t);
        ker[i * n + i] = ctx.kappa_tilde(nodes[i], nodes[i]);
        for (int j = 0; j < i; ++j) {
            const double v = ctx.kappa_tilde(nodes[i], nodes[j]);
            ker[i * n + j] = v;
            ker[j * n + i] = v;
        }
    }
    return evaluate(n, m, ker, end);
}

}  // namespace ecir
