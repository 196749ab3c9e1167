#include "ecir/mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "ecir/errors.hpp"
#include "ecir/rng.hpp"

namespace ecir {

namespace {

struct StepGrid {
    double dt = 0.0;
    std::vector<double> k;        // k(s_j) at left endpoints
    std::vector<double> sigma;    // sigma(s_j)
    std::vector<double> d_sig2;   // d * sigma(s_j)^2
};

StepGrid build_grid(const PricingWindow& w, const ECIRModel& model, int steps) {
    StepGrid g;
    g.dt = w.tau() / steps;
    g.k.resize(steps);
    g.sigma.resize(steps);
    g.d_sig2.resize(steps);
    for (int j = 0; j < steps; ++j) {
        const double s = w.t + j * g.dt;
        g.k[j] = model.k(s);
        g.sigma[j] = model.sigma(s);
        g.d_sig2[j] = model.d * g.sigma[j] * g.sigma[j];
    }
    return g;
}

double path_integral_direct(const StepGrid& g, double r_start, CounterRng& rng) {
    double r = r_start;
    double rp = std::max(r, 0.0);
    double integral = 0.0;
    const int steps = static_cast<int>(g.k.size());
    for (int j = 0; j < steps; ++j) {
        const double dw = rng.normal() * std::sqrt(g.dt);
        r += (g.d_sig2[j] - 2.0 * g.k[j] * rp) * g.dt + 2.0 * g.sigma[j] * std::sqrt(rp) * dw;
        const double rp_next = std::max(r, 0.0);
        integral += 0.5 * (rp + rp_next) * g.dt;
        rp = rp_next;
    }
    return integral;
}

double path_integral_ou_sum(const StepGrid& g, int d, double r_start, CounterRng& rng) {
    std::vector<double> x(d, std::sqrt(r_start / d));
    double r = r_start;
    double integral = 0.0;
    const int steps = static_cast<int>(g.k.size());
    const double sqrt_dt = std::sqrt(g.dt);
    for (int j = 0; j < steps; ++j) {
        double r_next = 0.0;
        for (int i = 0; i < d; ++i) {
            x[i] += -g.k[j] * x[i] * g.dt + g.sigma[j] * sqrt_dt * rng.normal();
            r_next += x[i] * x[i];
        }
        integral += 0.5 * (r + r_next) * g.dt;
        r = r_next;
    }
    return integral;
}

}  // namespace

McEstimate mc_price(const PricingWindow& window, const ECIRModel& model, double r_start,
                    const McConfig& cfg) {
    if (cfg.paths < 1) throw ConfigError("mc_price: paths must be >= 1");
    if (cfg.steps < 1) throw ConfigError("mc_price: steps must be >= 1");
    if (r_start < 0.0) throw ConfigError("mc_price: r_start must be >= 0");
    if (window.T < window.t) throw ConfigError("mc_price: window requires t <= T");

    if (window.tau() == 0.0) return {1.0, 0.0, cfg.paths};

    const StepGrid grid = build_grid(window, model, cfg.steps);
    const int chunks = std::max(1, cfg.chunks);

    std::vector<double> chunk_sum(chunks, 0.0);
    std::vector<double> chunk_sumsq(chunks, 0.0);

    auto run_chunk = [&](int c) {
        const std::int64_t begin = cfg.paths * c / chunks;
        const std::int64_t end = cfg.paths * (c + 1) / chunks;
        double sum = 0.0, sumsq = 0.0;
        for (std::int64_t p = begin; p < end; ++p) {
            CounterRng rng(CounterRng::derive_key(cfg.seed, static_cast<std::uint64_t>(p)));
            const double integral = cfg.scheme == McScheme::DirectSde
                                        ? path_integral_direct(grid, r_start, rng)
                                        : path_integral_ou_sum(grid, model.d, r_start, rng);
            const double price = std::exp(-integral);
            sum += price;
            sumsq += price * price;
        }
        chunk_sum[c] = sum;
        chunk_sumsq[c] = sumsq;
    };

    const int workers = std::min<int>(chunks, std::max(1u, std::thread::hardware_concurrency()));
    if (workers == 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int wkr = 0; wkr < workers; ++wkr) {
            pool.emplace_back([&, wkr] {
                for (int c = wkr; c < chunks; c += workers) run_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Combine in chunk order: deterministic for a fixed chunk count.
    double sum = 0.0, sumsq = 0.0;
    for (int c = 0; c < chunks; ++c) {
        sum += chunk_sum[c];
        sumsq += chunk_sumsq[c];
    }
    const double n = static_cast<double>(cfg.paths);
    const double mean = sum / n;
    double std_error = 0.0;
    if (cfg.paths > 1) {
        const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
        std_error = std::sqrt(var / n);
    }
    return {mean, std_error, cfg.paths};
}

}  // namespace ecir
