#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ecir/errors.hpp"
#include "ecir/quadrature.hpp"

using namespace ecir;

TEST_CASE("mapped weights sum to the interval length") {
    for (int q : {1, 2, 4, 8, 16, 32}) {
        const QuadratureRule rule(q);
        const auto w = rule.mapped_weights(0.3, 1.7);
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        CHECK(sum == doctest::Approx(1.4).epsilon(1e-14));
    }
}

TEST_CASE("integrate_1d on the stated examples") {
    CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(integrate_1d([](double s) { return 1.0 - s; }, 0.8, 1.0, 4) ==
          doctest::Approx(0.02).epsilon(1e-14));
    const double expected = 0.2 * 0.2 * 0.2 / 3.0;
    CHECK(integrate_1d([](double s) { return (1.0 - s) * (1.0 - s); }, 0.8, 1.0, 4) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("polynomial exactness up to degree 2q-1") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int q : {1, 2, 3, 5, 8}) {
        const int degree = 2 * q - 1;
        std::vector<double> c(degree + 1);
        for (double& v : c) v = coeff(gen);
        const auto poly = [&](double s) {
            double acc = 0.0;
            for (int k = degree; k >= 0; --k) acc = acc * s + c[k];
            return acc;
        };
        // analytic primitive
        double exact = 0.0;
        const double a = 0.25, b = 1.5;
        for (int k = 0; k <= degree; ++k)
            exact += c[k] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
        const double approx = integrate_1d(poly, a, b, q);
        CHECK(approx == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("hypercube tensor product on a separable integrand") {
    HypercubeOptions opt;
    opt.q = 4;
    const auto f = [](std::span<const double> s) { return (1.0 - s[0]) * (1.0 - s[1]); };
    const double got = integrate_hypercube(2, f, 0.8, 1.0, opt);
    CHECK(got == doctest::Approx(4e-4).epsilon(1e-13));
}

TEST_CASE("symmetric reduction agrees with the full tensor grid") {
    HypercubeOptions full;
    full.q = 5;
    HypercubeOptions sym = full;
    sym.symmetric = true;
    const auto f = [](std::span<const double> s) {
        double prod = 1.0;
        for (double v : s) prod *= 0.5 + v * v;
        double pairs = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) pairs += std::min(s[i], s[j]);
        return prod * (1.0 + pairs);
    };
    const double a = integrate_hypercube(3, f, 0.8, 1.0, full);
    const double b = integrate_hypercube(3, f, 0.8, 1.0, sym);
    CHECK(b == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("diagonal split integrates kinked integrands exactly") {
    // f = (1 - max(s1, s2))^2 over [0.8, 1]^2: 2 * tau^4 / 12 analytically.
    const auto f = [](std::span<const double> s) {
        const double m = 1.0 - std::max(s[0], s[1]);
        return m * m;
    };
    const double exact = 2.0 * std::pow(0.2, 4) / 12.0;
    HypercubeOptions split;
    split.q = 8;
    split.split_diagonal = true;
    CHECK(integrate_hypercube(2, f, 0.8, 1.0, split) == doctest::Approx(exact).epsilon(1e-13));
    HypercubeOptions plain;
    plain.q = 8;
    const double tensor = integrate_hypercube(2, f, 0.8, 1.0, plain);
    // The plain tensor rule sees the kink; it should still be close.
    CHECK(tensor == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("evaluation budget produces a capacity error naming the budget") {
    HypercubeOptions opt;
    opt.q = 8;
    opt.max_evaluations = 1000;
    const auto f = [](std::span<const double>) { return 1.0; };
    try {
        integrate_hypercube(6, f, 0.0, 1.0, opt);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
}

TEST_CASE("degenerate dimensions and windows") {
    HypercubeOptions opt;
    const auto f = [](std::span<const double>) { return 3.5; };
    CHECK(integrate_hypercube(0, f, 0.0, 1.0, opt) == 3.5);
    CHECK(integrate_hypercube(3, f, 0.7, 0.7, opt) == 0.0);
}

TEST_CASE("total grid weight is the hypercube volume") {
    const auto one = [](std::span<const double>) { return 1.0; };
    for (int n : {1, 2, 3, 4}) {
        HypercubeOptions opt;
        opt.q = 5;
        const double volume = std::pow(0.6, n);
        CHECK(integrate_hypercube(n, one, 0.2, 0.8, opt) == doctest::Approx(volume).epsilon(1e-14));
        opt.symmetric = true;
        CHECK(integrate_hypercube(n, one, 0.2, 0.8, opt) == doctest::Approx(volume).epsilon(1e-14));
    }
}
