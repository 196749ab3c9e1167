#include "ecir/model.hpp"

#include <algorithm>
#include <cmath>

#include "ecir/errors.hpp"
#include "ecir/quadrature.hpp"

namespace ecir {

DriftIntegralCache::DriftIntegralCache(const CoefficientFunction& k, double horizon, int cells) {
    if (horizon < 0.0) throw ConfigError("DriftIntegralCache: horizon must be >= 0");
    if (cells < 1) throw ConfigError("DriftIntegralCache: needs at least one cell");
    horizon_ = horizon;
    zero_ = k.is_identically_zero();
    if (zero_ || horizon == 0.0) return;

    cell_width_ = horizon / cells;
    prefix_.resize(cells + 1, 0.0);
    k_at_nodes_.resize(cells + 1, 0.0);
    const QuadratureRule rule(4);
    for (int c = 0; c < cells; ++c) {
        const double a = c * cell_width_;
        const double b = a + cell_width_;
        const auto x = rule.mapped_nodes(a, b);
        const auto w = rule.mapped_weights(a, b);
        double cell = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) cell += w[i] * k(x[i]);
        prefix_[c + 1] = prefix_[c] + cell;
        k_at_nodes_[c] = k(a);
    }
    k_at_nodes_[cells] = k(horizon);
}

double DriftIntegralCache::integral(double x) const {
    if (zero_ || horizon_ == 0.0) return 0.0;
    x = std::clamp(x, 0.0, horizon_);
    const double pos = x / cell_width_;
    const int c = std::min(static_cast<int>(pos), static_cast<int>(prefix_.size()) - 2);
    const double frac = x - c * cell_width_;
    // Linear interpolation of K within the cell.
    return prefix_[c] + frac * (prefix_[c + 1] - prefix_[c]) / cell_width_;
}

double DriftIntegralCache::integral_between(double a, double b) const {
    return integral(b) - integral(a);
}

ModelContext::ModelContext(const ECIRModel& model, double horizon, int cache_cells)
    : model_(model), horizon_(horizon), cache_(model.k, horizon, cache_cells) {}

double ModelContext::kappa_tilde(double a, double b) const {
    const double hi = std::max(a, b);
    if (hi >= horizon_) return 0.0;
    if (model_.k.is_identically_zero()) return horizon_ - hi;
    const double ka = cache_.integral(a);
    const double kb = cache_.integral(b);
    // Two composite panels keep the smooth integrand at machine accuracy for
    // any reasonable drift.
    const auto integrand = [this](double s) { return std::exp(-2.0 * cache_.integral(s)); };
    const double mid = 0.5 * (hi + horizon_);
    const double tail = integrate_1d(integrand, hi, mid, 16) + integrate_1d(integrand, mid, horizon_, 16);
    return std::exp(ka + kb) * tail;
}

double ModelContext::time_factor(double t) const {
    if (t >= horizon_) return 0.0;
    if (model_.k.is_identically_zero()) return horizon_ - t;
    const double kt = cache_.integral(t);
    const auto integrand = [this](double s) { return std::exp(-2.0 * cache_.integral(s)); };
    const double mid = 0.5 * (t + horizon_);
    const double tail = integrate_1d(integrand, t, mid, 16) + integrate_1d(integrand, mid, horizon_, 16);
    return std::exp(2.0 * kt) * tail;
}

double kappa_tilde(double a, double b, double T, const ECIRModel& model) {
    return ModelContext(model, T).kappa_tilde(a, b);
}

double ou_path_x(double t, const ECIRModel& model, std::span<const double> brownian_increments) {
    const double x0 = std::sqrt(model.r0 / model.d);
    const std::size_t steps = brownian_increments.size();
    if (steps == 0 || t == 0.0) return x0;
    const double dt = t / static_cast<double>(steps);
    const DriftIntegralCache cache(model.k, t);
    const double kt = cache.integral(t);
    double x = x0 * std::exp(-kt);
    for (std::size_t j = 0; j < steps; ++j) {
        const double u = j * dt;
        x += std::exp(-(kt - cache.integral(u))) * model.sigma(u) * brownian_increments[j];
    }
    return x;
}

}  // namespace ecir
