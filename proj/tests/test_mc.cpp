#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecir/mc.hpp"
#include "ecir/pricer.hpp"
#include "ecir/rng.hpp"

using namespace ecir;

namespace {

ECIRModel make_model(const std::string& k, const std::string& sigma, int d = 1, double r0 = 0.5) {
    ECIRModel m;
    m.k = CoefficientFunction::parse(k, 1.0);
    m.sigma = CoefficientFunction::parse(sigma, 1.0);
    m.d = d;
    m.r0 = r0;
    return m;
}

}  // namespace

TEST_CASE("deterministic degenerate path is exact") {
    const ECIRModel m = make_model("0", "0");
    McConfig cfg;
    cfg.paths = 64;
    cfg.steps = 16;
    const McEstimate est = mc_price({0.8, 1.0}, m, 0.5, cfg);
    CHECK(est.mean == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));
    CHECK(est.std_error == 0.0);
}

TEST_CASE("fixed seeds reproduce bitwise, scheme and chunk layout included") {
    const ECIRModel m = make_model("0", "1");
    McConfig cfg;
    cfg.paths = 20000;
    cfg.steps = 50;
    cfg.seed = 99;
    const McEstimate a = mc_price({0.8, 1.0}, m, 0.5, cfg);
    const McEstimate b = mc_price({0.8, 1.0}, m, 0.5, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    cfg.scheme = McScheme::OuSum;
    const McEstimate c = mc_price({0.8, 1.0}, m, 0.5, cfg);
    const McEstimate d = mc_price({0.8, 1.0}, m, 0.5, cfg);
    CHECK(c.mean == d.mean);
    CHECK(c.mean != a.mean);  // different schemes, different draws
}

TEST_CASE("direct and ou-sum schemes agree within noise") {
    const ECIRModel m = make_model("0", "1-s");
    McConfig direct;
    direct.paths = 40000;
    direct.steps = 100;
    direct.seed = 7;
    McConfig ousum = direct;
    ousum.scheme = McScheme::OuSum;
    ousum.seed = 8;
    const McEstimate a = mc_price({0.8, 1.0}, m, 0.5, direct);
    const McEstimate b = mc_price({0.8, 1.0}, m, 0.5, ousum);
    const double combined = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    CHECK(std::fabs(a.mean - b.mean) <= 3.0 * combined);
}

TEST_CASE("terminal-rate moments match between the two dynamics") {
    // Euler on the rate SDE vs the sum of d squared OU components, simulated
    // here independently of mc_price.
    const int d = 2;
    const double r0 = 0.5, t0 = 0.0, t1 = 0.5;
    const int steps = 200, paths = 100000;
    const double dt = (t1 - t0) / steps;
    const double kconst = 1.0, sig = 0.6;

    double sum_a = 0.0, sumsq_a = 0.0, sum_b = 0.0, sumsq_b = 0.0;
    for (int p = 0; p < paths; ++p) {
        CounterRng rng_a(CounterRng::derive_key(5150, p));
        double r = r0;
        for (int j = 0; j < steps; ++j) {
            const double rp = std::max(r, 0.0);
            r += (d * sig * sig - 2.0 * kconst * rp) * dt +
                 2.0 * sig * std::sqrt(rp) * rng_a.normal() * std::sqrt(dt);
        }
        const double ra = std::max(r, 0.0);
        sum_a += ra;
        sumsq_a += ra * ra;

        CounterRng rng_b(CounterRng::derive_key(51500, p));
        double x[2] = {std::sqrt(r0 / d), std::sqrt(r0 / d)};
        for (int j = 0; j < steps; ++j) {
            for (double& xi : x)
                xi += -kconst * xi * dt + sig * rng_b.normal() * std::sqrt(dt);
        }
        const double rb = x[0] * x[0] + x[1] * x[1];
        sum_b += rb;
        sumsq_b += rb * rb;
    }
    const double mean_a = sum_a / paths, mean_b = sum_b / paths;
    const double var_a = (sumsq_a - paths * mean_a * mean_a) / (paths - 1.0);
    const double var_b = (sumsq_b - paths * mean_b * mean_b) / (paths - 1.0);
    const double se_mean = std::sqrt(var_a / paths) + std::sqrt(var_b / paths);
    CHECK(std::fabs(mean_a - mean_b) <= 3.0 * se_mean);
    const double se_var = (var_a + var_b) * std::sqrt(2.0 / (paths - 1.0));
    CHECK(std::fabs(var_a - var_b) <= 3.0 * se_var);
}

TEST_CASE("mc agrees with the series price on the base configuration") {
    const ECIRModel m = make_model("0", "1");
    const PricingWindow w{0.8, 1.0};
    McConfig cfg;
    cfg.paths = 100000;
    cfg.steps = 200;
    cfg.seed = 1789;
    const McEstimate est = mc_price(w, m, 0.5, cfg);
    const double series = price_const_k(w, m, 0.5, 4, 8).price;
    CHECK(series == doctest::Approx(0.8895).epsilon(5e-4));
    CHECK(std::fabs(est.mean - series) <= 3.0 * est.std_error);
}

TEST_CASE("price estimate stays in (0, 1] and the stderr scales") {
    const ECIRModel m = make_model("1", "sin(s)", 2);
    McConfig small;
    small.paths = 2000;
    small.steps = 50;
    const McEstimate est = mc_price({0.5, 1.0}, m, 0.4, small);
    CHECK(est.mean > 0.0);
    CHECK(est.mean <= 1.0);
    McConfig big = small;
    big.paths = 32000;
    const McEstimate est2 = mc_price({0.5, 1.0}, m, 0.4, big);
    CHECK(est2.std_error < est.std_error);
}

TEST_CASE("degenerate window prices at par") {
    const ECIRModel m = make_model("0", "1");
    McConfig cfg;
    cfg.paths = 10;
    const McEstimate est = mc_price({1.0, 1.0}, m, 0.5, cfg);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
}
