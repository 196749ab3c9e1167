#include "ecir/riccati.hpp"

#include <cmath>

#include "ecir/errors.hpp"

namespace ecir {

double RiccatiSolution::price(double r_t) const { return A_at_t() * std::exp(-B_at_t() * r_t); }

RiccatiSolution riccati_solve(const PricingWindow& window, const ECIRModel& model, double h,
                              RiccatiConvention convention) {
    const double tau = window.tau();
    if (tau < 0.0) throw ConfigError("riccati_solve: window requires t <= T");
    if (tau == 0.0) return {{window.t}, {0.0}, {1.0}, 0.0};
    if (h <= 0.0) throw ConfigError("riccati_solve: step h must be > 0");
    if (h > tau) throw ConfigError("riccati_solve: step h must be <= T - t");
    const double nsteps_real = std::ceil(tau / h - 1e-12);
    if (nsteps_real > 5e7) throw ConfigError("riccati_solve: step h too small for the window");
    const int nsteps = static_cast<int>(nsteps_real);
    const double step = tau / nsteps;

    const double kfac = convention == RiccatiConvention::Doubled ? 2.0 : 1.0;
    const double qfac = convention == RiccatiConvention::Doubled ? 2.0 : 0.5;
    const double afac = convention == RiccatiConvention::Doubled ? 1.0 : 0.5;

    const auto dB = [&](double s, double b) {
        const double sig = model.sigma(s);
        return kfac * model.k(s) * b + qfac * sig * sig * b * b - 1.0;
    };
    const auto dlnA = [&](double s, double b) {
        const double sig = model.sigma(s);
        return afac * model.d * sig * sig * b;
    };

    RiccatiSolution sol;
    sol.h = step;
    sol.time.resize(nsteps + 1);
    sol.B.resize(nsteps + 1);
    sol.A.resize(nsteps + 1);
    sol.time[nsteps] = window.T;
    sol.B[nsteps] = 0.0;
    sol.A[nsteps] = 1.0;

    double b = 0.0, ln_a = 0.0;
    for (int i = nsteps; i > 0; --i) {
        const double s = window.t + i * step;
        const double hh = -step;  // integrating backward in t
        const double k1b = dB(s, b);
        const double k1a = dlnA(s, b);
        const double k2b = dB(s + 0.5 * hh, b + 0.5 * hh * k1b);
        const double k2a = dlnA(s + 0.5 * hh, b + 0.5 * hh * k1b);
        const double k3b = dB(s + 0.5 * hh, b + 0.5 * hh * k2b);
        const double k3a = dlnA(s + 0.5 * hh, b + 0.5 * hh * k2b);
        const double k4b = dB(s + hh, b + hh * k3b);
        const double k4a = dlnA(s + hh, b + hh * k3b);
        b += hh / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        ln_a += hh / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        sol.time[i - 1] = window.t + (i - 1) * step;
        sol.B[i - 1] = b;
        sol.A[i - 1] = std::exp(ln_a);
    }
    return sol;
}

}  // namespace ecir
