#pragma once

#include <vector>

#include "ecir/model.hpp"

namespace ecir {

// Coefficient convention of the scalar Riccati equation for the affine
// exponent B(t, T). `Doubled` matches the rate SDE this library prices
// (drift 2k(theta - r), diffusion 2 sigma sqrt(r)):
//   dB/dt = 2 k(t) B + 2 sigma(t)^2 B^2 - 1,      (ln A)' = d sigma(t)^2 B.
// `Printed` is the un-doubled textbook form, kept for documentation and
// comparison:
//   dB/dt = k(t) B + (1/2) sigma(t)^2 B^2 - 1,    (ln A)' = (d/2) sigma(t)^2 B.
enum class RiccatiConvention { Doubled, Printed };

struct RiccatiSolution {
    std::vector<double> time;  // ascending, time[0] = t, back() = T
    std::vector<double> B;     // B(time[i], T)
    std::vector<double> A;     // A(time[i], T)
    double h = 0.0;

    double B_at_t() const { return B.front(); }
    double A_at_t() const { return A.front(); }
    double price(double r_t) const;
};

// Classic RK4 backward from the terminal conditions B(T, T) = 0, A(T, T) = 1.
RiccatiSolution riccati_solve(const PricingWindow& window, const ECIRModel& model, double h,
                              RiccatiConvention convention = RiccatiConvention::Doubled);

}  // namespace ecir
