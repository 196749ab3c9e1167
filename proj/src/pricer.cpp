#include "ecir/pricer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ecir/errors.hpp"
#include "ecir/quadrature.hpp"

namespace ecir {

double SeriesTerms::partial_sum(int up_to_n) const {
    double s = 0.0;
    const int hi = std::min<int>(up_to_n, static_cast<int>(b.size()) - 1);
    for (int n = 0; n <= hi; ++n) s += b[n];
    return s;
}

double SeriesTerms::max_q_delta() const {
    double d = 0.0;
    for (double v : q_delta) d = std::max(d, v);
    return d;
}

SeriesPricer::SeriesPricer(const PricingWindow& window, const ECIRModel& model, SeriesOptions opt)
    : window_(window),
      model_(model),
      opt_(opt),
      ctx_(model, window.T),
      gnm_(opt.max_order) {
    if (window.T < window.t) throw ConfigError("SeriesPricer: window requires t <= T");
    if (model.d < 1) throw ConfigError("SeriesPricer: dimension d must be >= 1");
}

double SeriesPricer::integral_b(int n, int m, int q) const {
    if (n == 0) return m == 0 ? 1.0 : 0.0;
    const bool const_k = model_.k.is_identically_zero();
    const double t = window_.t, T = window_.T;

    const auto integrand = [&](std::span<const double> nodes) {
        const double g = const_k ? gnm_.g_const(n, m, nodes, T)
                                 : gnm_.g_timedep(n, m, t, nodes, ctx_);
        double sig2 = 1.0;
        for (double s : nodes) {
            const double sv = model_.sigma(s);
            sig2 *= sv * sv;
        }
        return g * sig2;
    };

    HypercubeOptions hopt;
    hopt.q = q;
    hopt.symmetric = opt_.symmetric_quadrature;
    hopt.split_diagonal = opt_.split_diagonal;
    hopt.max_evaluations = opt_.budget;
    const double raw = integrate_hypercube(n, integrand, t, T, hopt);

    // prefactor 1 / (2^n n!)
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return std::ldexp(raw, -n) / fact;
}

SeriesTerms SeriesPricer::coefficient(int m, int N) const {
    if (m < 0) throw ConfigError("coefficient: m must be >= 0");
    if (N < 0) throw ConfigError("coefficient: N must be >= 0");
    if (N < m) {
        // A_m has no terms below n = m; an N below m leaves the empty sum.
        SeriesTerms empty;
        empty.m = m;
        empty.b.assign(static_cast<std::size_t>(N) + 1, 0.0);
        empty.tail_bound = truncation_bound(N, m, window_, model_, opt_.alpha, opt_.beta);
        return empty;
    }
    if (N > opt_.max_order) {
        std::ostringstream os;
        os << "coefficient: truncation N=" << N << " exceeds max_order=" << opt_.max_order;
        throw CapacityError(os.str());
    }
    SeriesTerms out;
    out.m = m;
    out.b.assign(static_cast<std::size_t>(N) + 1, 0.0);
    out.q_delta.assign(out.b.size(), 0.0);
    if (model_.sigma.is_identically_zero() || window_.tau() == 0.0) {
        // every integrand with n >= 1 vanishes
        if (m == 0) {
            out.b[0] = 1.0;
            out.value = 1.0;
        }
        out.n_used = std::min(m, N);
        out.tail_bound = 0.0;
        return out;
    }
    for (int n = m; n <= N; ++n) {
        const double bn = integral_b(n, m, opt_.q);
        out.b[n] = bn;
        out.value += bn;
        out.n_used = n;
        if (opt_.refinement_diagnostics && n >= 1)
            out.q_delta[n] = std::fabs(bn - integral_b(n, m, opt_.q + 2));
        // Empirical stopping: the proven bound is loose, so the rule is the
        // observed term magnitude, once past n = m.
        if (n >= m + 1 && std::fabs(bn) < opt_.tol * std::fabs(out.value)) break;
    }
    out.tail_bound =
        truncation_bound(out.n_used, m, window_, model_, opt_.alpha, opt_.beta);
    return out;
}

BondPrice SeriesPricer::assemble(const SeriesTerms& a0, const SeriesTerms& a1, double r_t,
                                 int terms) const {
    if (r_t < 0.0) throw ConfigError("price: r_t must be >= 0");
    if (terms < 0) throw ConfigError("price: truncation order must be >= 0");
    BondPrice out;
    // Matching powers of (T - t): B_n^0 is O(tau^{2n}) while B_n^1 is
    // O(tau^{2n+1}), so A_1 is cut one n lower than A_0.
    out.a0 = a0.partial_sum(terms);
    out.a1 = a1.partial_sum(terms - 1);
    out.terms = terms;
    out.tail_bound = a0.tail_bound;
    if (out.a0 <= 0.0) {
        std::ostringstream os;
        os << "series out of its convergence domain: A0=" << out.a0 << " at truncation N=" << terms
           << " (tail bound " << a0.tail_bound << "); the window T-t=" << window_.tau()
           << " is too wide for this truncation";
        throw SeriesDivergenceError(os.str());
    }
    const double tf = ctx_.time_factor(window_.t);
    out.b_part = tf - out.a1 / out.a0;
    out.a_part = std::pow(out.a0, model_.d);
    out.price = out.a_part * std::exp(-out.b_part * r_t);
    return out;
}

BondPrice SeriesPricer::price(double r_t, int terms) const {
    const SeriesTerms a0 = coefficient(0, terms);
    const SeriesTerms a1 = coefficient(1, std::max(terms - 1, 0));
    return assemble(a0, a1, r_t, terms);
}

std::pair<double, double> SeriesPricer::riccati_pair(int terms) const {
    const BondPrice p = price(0.0, terms);
    return {p.a_part, p.b_part};
}

double compute_A(int m, const PricingWindow& window, const ECIRModel& model, int N, int q) {
    SeriesOptions opt;
    opt.q = q;
    opt.N = N;
    opt.tol = 0.0;  // plain partial sum n = m..N, no early stop
    return SeriesPricer(window, model, opt).coefficient(m, N).value;
}

BondPrice price_const_k(const PricingWindow& window, const ECIRModel& model, double r_t, int N,
                        int q) {
    if (!model.k.is_identically_zero())
        throw ConfigError("price_const_k: the drift must be identically zero");
    SeriesOptions opt;
    opt.N = N;
    opt.q = q;
    return SeriesPricer(window, model, opt).price(r_t, N);
}

BondPrice price_timedep(const PricingWindow& window, const ECIRModel& model, double r_t, int N,
                        int q) {
    SeriesOptions opt;
    opt.N = N;
    opt.q = q;
    return SeriesPricer(window, model, opt).price(r_t, N);
}

std::pair<double, double> riccati_from_series(const PricingWindow& window, const ECIRModel& model,
                                              int N, int q) {
    SeriesOptions opt;
    opt.N = N;
    opt.q = q;
    return SeriesPricer(window, model, opt).riccati_pair(N);
}

double truncation_bound(int N, int m, const PricingWindow& window, const ECIRModel& model,
                        double alpha, double beta) {
    if (beta <= 2.0) throw ConfigError("truncation_bound: beta must be > 2");
    if (alpha < 1.0) throw ConfigError("truncation_bound: alpha must be >= 1");
    const double tau = window.tau();
    if (tau == 0.0) return 0.0;
    const double M = model.sigma.bound();
    const double rho = (4.0 + beta) * M * M * tau * tau / 2.0;
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    double mfact = 1.0;
    for (int i = 2; i <= m; ++i) mfact *= i;
    return alpha / mfact * std::pow(8.0 / beta, m) * std::pow(tau, m) * std::pow(rho, N + 1) /
           (1.0 - rho);
}

}  // namespace ecir
