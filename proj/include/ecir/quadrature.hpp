#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ecir {

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial and cached process-wide.
class QuadratureRule {
public:
    explicit QuadratureRule(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    // Nodes/weights mapped to [a, b]; weights sum to b - a.
    std::vector<double> mapped_nodes(double a, double b) const;
    std::vector<double> mapped_weights(double a, double b) const;
    std::span<const double> reference_nodes() const { return nodes_; }
    std::span<const double> reference_weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Gauss-Legendre approximation of \int_a^b f; exact for polynomials of
// degree <= 2q-1. Throws EvaluationError if f returns a non-finite value.
double integrate_1d(const std::function<double(double)>& f, double a, double b, int q);

struct HypercubeOptions {
    int q = 8;                 // nodes per axis
    bool symmetric = false;    // evaluate sorted tuples only (f must be symmetric)
    bool split_diagonal = false;  // n == 2 only: integrate the two triangles separately
    std::int64_t max_evaluations = 10'000'000;
};

// Tensor-product Gauss-Legendre over [t, T]^n. In symmetric mode only
// non-decreasing node tuples are evaluated, each weighted by the number of
// distinct permutations of its multiset. With split_diagonal and n == 2 the
// square is integrated as two triangles via an iterated rule with variable
// inner limits, which restores spectral accuracy for integrands with a kink
// along s1 == s2.
double integrate_hypercube(int n, const std::function<double(std::span<const double>)>& f,
                           double t, double T, const HypercubeOptions& opt);

}  // namespace ecir
