#pragma once

#include <cstdint>
#include <vector>

#include "ecir/gnm.hpp"
#include "ecir/model.hpp"

namespace ecir {

struct SeriesOptions {
    int N = 4;                     // truncation order (see price assembly below)
    int q = 8;                     // quadrature nodes per axis
    double tol = 1e-10;            // early-stop threshold, relative to the running sum
    double alpha = 1.0;            // tail-bound constants (diagnostic only)
    double beta = 9.0;
    int max_order = GnmEvaluator::kDefaultMaxOrder;
    bool symmetric_quadrature = true;
    bool split_diagonal = true;    // 2-d integrals as two smooth triangles
    std::int64_t budget = 10'000'000;
    // Re-integrate every term at q + 2 nodes and record |I(q) - I(q+2)|.
    bool refinement_diagnostics = false;
};

// One series coefficient A_m = sum_n B_n^m with the per-n term magnitudes.
struct SeriesTerms {
    int m = 0;
    std::vector<double> b;  // b[n] = B_n^m for n = 0..N (entries below n = m are 0)
    int n_used = 0;         // last n actually added (early stop may be < N)
    double value = 0.0;     // sum of the kept terms
    double tail_bound = 0.0;  // proven bound on the dropped tail (may be +inf)
    // per-n |I(q) - I(q+2)| when refinement diagnostics are enabled
    std::vector<double> q_delta;

    double partial_sum(int up_to_n) const;
    double max_q_delta() const;
};

struct BondPrice {
    double price = 0.0;
    double a_part = 0.0;  // A_0^d
    double b_part = 0.0;  // affine exponent B(t, T)
    double a0 = 0.0;
    double a1 = 0.0;
    int terms = 0;  // truncation order used
    double tail_bound = 0.0;
};

// Series evaluation engine for one (window, model) pair. Constant-drift and
// time-dependent-drift models share the implementation; the kernels reduce
// to T - max(a, b) exactly when k = 0.
class SeriesPricer {
public:
    SeriesPricer(const PricingWindow& window, const ECIRModel& model, SeriesOptions opt = {});

    const ModelContext& context() const { return ctx_; }
    const SeriesOptions& options() const { return opt_; }
    const PricingWindow& window() const { return window_; }

    // A_m truncated at n <= N, with per-n magnitudes and the tail bound.
    SeriesTerms coefficient(int m, int N) const;

    // Bond price at truncation order `terms`: A_0 keeps integrals up to
    // n = terms and A_1 up to n = terms - 1, so both series are cut at the
    // same power of (T - t). The affine exponent is
    //   B = time_factor(t) - A_1 / A_0,   P = A_0^d exp(-B r_t),
    // where time_factor is T - t when k = 0.
    BondPrice price(double r_t, int terms) const;
    BondPrice price(double r_t) const { return price(r_t, opt_.N); }

    // Assembles a price from already-computed coefficient tables; used by the
    // experiment runner to price every truncation order from one table.
    BondPrice assemble(const SeriesTerms& a0, const SeriesTerms& a1, double r_t, int terms) const;

    // The affine pair (A, B) with P = A exp(-B r_t).
    std::pair<double, double> riccati_pair(int terms) const;

private:
    double integral_b(int n, int m, int q) const;  // B_n^m

    PricingWindow window_;
    ECIRModel model_;
    SeriesOptions opt_;
    ModelContext ctx_;
    GnmEvaluator gnm_;
};

// Free-function conveniences (each builds a SeriesPricer internally).
double compute_A(int m, const PricingWindow& window, const ECIRModel& model, int N, int q);
// Requires k identically zero.
BondPrice price_const_k(const PricingWindow& window, const ECIRModel& model, double r_t, int N,
                        int q);
BondPrice price_timedep(const PricingWindow& window, const ECIRModel& model, double r_t, int N,
                        int q);
std::pair<double, double> riccati_from_series(const PricingWindow& window, const ECIRModel& model,
                                              int N, int q);

// Closed geometric form of the proven tail estimate: with M the sigma bound
// and sup |G_n^m| <= (alpha/m!) (8/beta)^m (4+beta)^n n! tau^{n+m},
//   sum_{n>N} |B_n^m| <= (alpha/m!) (8/beta)^m tau^m
//       * rho^{N+1} / (1 - rho),   rho = (4 + beta) M^2 tau^2 / 2.
// Returns +inf when rho >= 1 (bound inapplicable). Diagnostic only; alpha and
// beta are not sharp, so stopping uses observed term magnitudes instead.
double truncation_bound(int N, int m, const PricingWindow& window, const ECIRModel& model,
                        double alpha, double beta);

}  // namespace ecir
