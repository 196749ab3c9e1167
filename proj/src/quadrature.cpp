#include "ecir/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

struct ReferenceRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Legendre P_q and P_q' at x via the three-term recurrence.
std::pair<double, double> legendre(int q, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

ReferenceRule compute_rule(int q) {
    ReferenceRule r;
    r.nodes.resize(q);
    r.weights.resize(q);
    for (int i = 0; i < q; ++i) {
        // Chebyshev-based initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 64; ++it) {
            const auto [p, dp] = legendre(q, x);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const auto [p, dp] = legendre(q, x);
        (void)p;
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const ReferenceRule& cached_rule(int q) {
    if (q < 1) throw ConfigError("quadrature order must be >= 1");
    static std::map<int, ReferenceRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, compute_rule(q)).first;
    return it->second;
}

double checked(double v, std::span<const double> at) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand is non-finite at (";
        for (std::size_t i = 0; i < at.size(); ++i) os << (i ? "," : "") << at[i];
        os << ")";
        throw EvaluationError(os.str());
    }
    return v;
}

}  // namespace

QuadratureRule::QuadratureRule(int order) {
    const ReferenceRule& r = cached_rule(order);
    nodes_ = r.nodes;
    weights_ = r.weights;
}

std::vector<double> QuadratureRule::mapped_nodes(double a, double b) const {
    std::vector<double> out(nodes_.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = mid + half * nodes_[i];
    return out;
}

std::vector<double> QuadratureRule::mapped_weights(double a, double b) const {
    std::vector<double> out(weights_.size());
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < weights_.size(); ++i) out[i] = half * weights_[i];
    return out;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, int q) {
    if (b < a) throw ConfigError("integrate_1d: requires a <= b");
    if (a == b) return 0.0;
    const QuadratureRule rule(q);
    const auto x = rule.mapped_nodes(a, b);
    const auto w = rule.mapped_weights(a, b);
    double sum = 0.0;
    for (int i = 0; i < q; ++i) {
        const double xi = x[i];
        sum += w[i] * checked(f(xi), std::span<const double>(&xi, 1));
    }
    return sum;
}

namespace {

double integrate_full_tensor(int n, const std::function<double(std::span<const double>)>& f,
                             const std::vector<double>& x, const std::vector<double>& w) {
    const int q = static_cast<int>(x.size());
    std::vector<int> idx(n, 0);
    std::vector<double> pt(n);
    double sum = 0.0;
    for (;;) {
        double weight = 1.0;
        for (int a = 0; a < n; ++a) {
            pt[a] = x[idx[a]];
            weight *= w[idx[a]];
        }
        sum += weight * checked(f(pt), pt);
        int a = n - 1;
        while (a >= 0 && ++idx[a] == q) idx[a--] = 0;
        if (a < 0) break;
    }
    return sum;
}

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double integrate_symmetric(int n, const std::function<double(std::span<const double>)>& f,
                           const std::vector<double>& x, const std::vector<double>& w) {
    const int q = static_cast<int>(x.size());
    // Non-decreasing index tuples; each stands for n!/(prod of run lengths!)
    // permutations of the full tensor grid.
    std::vector<int> idx(n, 0);
    std::vector<double> pt(n);
    double sum = 0.0;
    for (;;) {
        double weight = 1.0;
        for (int a = 0; a < n; ++a) {
            pt[a] = x[idx[a]];
            weight *= w[idx[a]];
        }
        std::int64_t perm = factorial(n);
        int run = 1;
        for (int a = 1; a <= n; ++a) {
            if (a < n && idx[a] == idx[a - 1]) {
                ++run;
            } else {
                perm /= factorial(run);
                run = 1;
            }
        }
        sum += static_cast<double>(perm) * weight * checked(f(pt), pt);
        // next non-decreasing tuple
        int a = n - 1;
        while (a >= 0 && idx[a] == q - 1) --a;
        if (a < 0) break;
        const int v = idx[a] + 1;
        for (int b = a; b < n; ++b) idx[b] = v;
    }
    return sum;
}

double integrate_two_triangles(const std::function<double(std::span<const double>)>& f, double t,
                               double T, int q) {
    // Iterated rule on {s1 <= s2} and {s2 <= s1}; inner limits depend on the
    // outer node so each triangle's integrand is smooth.
    const QuadratureRule rule(q);
    const auto outer_x = rule.mapped_nodes(t, T);
    const auto outer_w = rule.mapped_weights(t, T);
    double sum = 0.0;
    double pt[2];
    for (int i = 0; i < q; ++i) {
        const double s2 = outer_x[i];
        const auto inner_x = rule.mapped_nodes(t, s2);
        const auto inner_w = rule.mapped_weights(t, s2);
        double lower = 0.0, upper = 0.0;
        for (int j = 0; j < q; ++j) {
            pt[0] = inner_x[j];
            pt[1] = s2;
            lower += inner_w[j] * checked(f(std::span<const double>(pt, 2)), pt);
            pt[0] = s2;
            pt[1] = inner_x[j];
            upper += inner_w[j] * checked(f(std::span<const double>(pt, 2)), pt);
        }
        sum += outer_w[i] * (lower + upper);
    }
    return sum;
}

std::int64_t evaluation_count(int n, int q, bool symmetric) {
    if (symmetric) {
        // C(q + n - 1, n), multiset count
        double c = 1.0;
        for (int i = 1; i <= n; ++i) c = c * (q + n - i) / i;
        return static_cast<std::int64_t>(std::llround(c));
    }
    double c = 1.0;
    for (int i = 0; i < n; ++i) c *= q;
    return c > 9.0e18 ? std::int64_t{9'000'000'000'000'000'000}
                      : static_cast<std::int64_t>(std::llround(c));
}

}  // namespace

double integrate_hypercube(int n, const std::function<double(std::span<const double>)>& f,
                           double t, double T, const HypercubeOptions& opt) {
    if (n < 0) throw ConfigError("integrate_hypercube: n must be >= 0");
    if (T < t) throw ConfigError("integrate_hypercube: requires t <= T");
    if (n == 0) return f(std::span<const double>{});
    if (t == T) return 0.0;

    const std::int64_t evals = evaluation_count(n, opt.q, opt.symmetric) * (opt.split_diagonal && n == 2 ? 2 : 1);
    if (evals > opt.max_evaluations) {
        std::ostringstream os;
        os << "integrate_hypercube: " << evals << " integrand evaluations exceed the budget of "
           << opt.max_evaluations << " (n=" << n << ", q=" << opt.q << ")";
        throw CapacityError(os.str());
    }

    if (n == 2 && opt.split_diagonal) return integrate_two_triangles(f, t, T, opt.q);

    const QuadratureRule rule(opt.q);
    const auto x = rule.mapped_nodes(t, T);
    const auto w = rule.mapped_weights(t, T);
    return opt.symmetric ? integrate_symmetric(n, f, x, w) : integrate_full_tensor(n, f, x, w);
}

}  // namespace ecir
