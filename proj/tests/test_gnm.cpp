#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ecir/errors.hpp"
#include "ecir/gnm.hpp"

using namespace ecir;

namespace {

ECIRModel model_with_drift(const std::string& k) {
    ECIRModel m;
    m.k = CoefficientFunction::parse(k, 1.0);
    m.sigma = CoefficientFunction::parse("1", 1.0);
    m.d = 1;
    m.r0 = 0.5;
    return m;
}

}  // namespace

TEST_CASE("constant-drift base cases") {
    const GnmEvaluator gnm;
    const double T = 1.0;
    const std::vector<double> one{0.8};
    CHECK(gnm.g_const(1, 0, one, T) == doctest::Approx(-0.4).epsilon(1e-14));
    CHECK(gnm.g_const(1, 1, one, T) == doctest::Approx(0.16).epsilon(1e-14));
    const std::vector<double> two{0.8, 0.9};
    // 4 (T-s1)(T-s2) + 8 (T - max)^2 = 0.08 + 0.08
    CHECK(gnm.g_const(2, 0, two, T) == doctest::Approx(0.16).epsilon(1e-14));
    // 16 (T-s1)^2 (T-s2)^2
    CHECK(gnm.g_const(2, 2, two, T) == doctest::Approx(0.0064).epsilon(1e-14));
    // hand expansion of the mixed order
    const double a = 0.2, b = 0.1;
    const double g21 = -8.0 * a * a * b - 8.0 * a * b * b - 32.0 * a * b * std::min(a, b);
    CHECK(gnm.g_const(2, 1, two, T) == doctest::Approx(g21).epsilon(1e-14));
}

TEST_CASE("vanishing and degenerate cases") {
    const GnmEvaluator gnm;
    const std::vector<double> nodes{0.82, 0.9, 0.95};
    for (int n = 0; n <= 3; ++n) {
        for (int m = n + 1; m <= n + 3; ++m) {
            CHECK(gnm.g_const(n, m, std::span<const double>(nodes.data(), n), 1.0) == 0.0);
        }
    }
    CHECK(gnm.g_const(0, 0, {}, 1.0) == 1.0);
}

TEST_CASE("order cap is configurable and enforced") {
    CHECK(GnmEvaluator().max_order() == 6);
    CHECK(GnmEvaluator(4).max_order() == 4);
    CHECK(GnmEvaluator(0).max_order() == 0);
    const GnmEvaluator capped(4);
    const std::vector<double> nodes(5, 0.9);
    CHECK_THROWS_AS(capped.g_const(5, 0, nodes, 1.0), CapacityError);
    const GnmEvaluator zero_cap(0);
    CHECK(zero_cap.g_const(0, 0, {}, 1.0) == 1.0);
    CHECK_THROWS_AS(zero_cap.g_const(1, 0, std::vector<double>{0.9}, 1.0), CapacityError);
}

TEST_CASE("permutation symmetry") {
    const GnmEvaluator gnm;
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.8, 1.0);
    const ECIRModel m = model_with_drift("1");
    const ModelContext ctx(m, 1.0);
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> nodes(n);
            for (double& s : nodes) s = u(gen);
            std::vector<double> shuffled = nodes;
            std::shuffle(shuffled.begin(), shuffled.end(), gen);
            for (int mm = 0; mm <= n; ++mm) {
                const double a = gnm.g_const(n, mm, nodes, 1.0);
                const double b = gnm.g_const(n, mm, shuffled, 1.0);
                CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
                const double at = gnm.g_timedep(n, mm, 0.8, nodes, ctx);
                const double bt = gnm.g_timedep(n, mm, 0.8, shuffled, ctx);
                CHECK(std::fabs(at - bt) <= 1e-12 * std::max(1.0, std::fabs(at)));
            }
        }
    }
}

TEST_CASE("time-dependent engine reduces to the constant one for zero drift") {
    const GnmEvaluator gnm;
    const ECIRModel m = model_with_drift("0");
    const ModelContext ctx(m, 1.0);
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.8, 1.0);
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            std::vector<double> nodes(n);
            for (double& s : nodes) s = u(gen);
            for (int mm = 0; mm <= n; ++mm) {
                const double a = gnm.g_const(n, mm, nodes, 1.0);
                const double b = gnm.g_timedep(n, mm, 0.8, nodes, ctx);
                CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
            }
        }
    }
}

TEST_CASE("time-dependent single-node values under unit drift") {
    const GnmEvaluator gnm;
    const ECIRModel m = model_with_drift("1");
    const ModelContext ctx(m, 1.0);
    const std::vector<double> nodes{0.9};
    // kernel with the valuation time: kappa(0.9, 0.8) = e^{-0.1}(1-e^{-0.2})/2
    const double kappa_end = std::exp(-0.1) * (1.0 - std::exp(-0.2)) / 2.0;
    CHECK(gnm.g_timedep(1, 1, 0.8, nodes, ctx) ==
          doctest::Approx(4.0 * kappa_end * kappa_end).epsilon(1e-12));
    // The m = 0 term freezes the second derivative at one time, so its
    // kernel is kappa(0.9, 0.9) = (1 - e^{-0.2})/2, not kappa(0.9, 0.8).
    const double kappa_self = (1.0 - std::exp(-0.2)) / 2.0;
    CHECK(gnm.g_timedep(1, 0, 0.8, nodes, ctx) ==
          doctest::Approx(-2.0 * kappa_self).epsilon(1e-12));
}

TEST_CASE("factorial-geometric bound holds on random samples") {
    const GnmEvaluator gnm;
    const double alpha = 1.0, beta = 9.0, tau = 0.2;
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(0.8, 1.0);
    for (int n = 1; n <= 4; ++n) {
        double nfact = 1.0;
        for (int i = 2; i <= n; ++i) nfact *= i;
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> nodes(n);
            for (double& s : nodes) s = u(gen);
            for (int m = 0; m <= n; ++m) {
                double mfact = 1.0;
                for (int i = 2; i <= m; ++i) mfact *= i;
                const double bound = alpha / mfact * std::pow(8.0 / beta, m) *
                                     std::pow(4.0 + beta, n) * nfact * std::pow(tau, n + m);
                CHECK(std::fabs(gnm.g_const(n, m, nodes, 1.0)) <= bound);
            }
        }
    }
}
