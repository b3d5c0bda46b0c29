#pragma once

#include <utility>
#include <vector>

namespace swdecay {

// Bessel function of the first kind, integer order n >= 0, x >= 0.
// Miller downward recurrence normalized by J_0 + 2 sum J_{2k} = 1, long
// double internals; relative error <= 1e-10 for x <= 200, n <= 100.
double bessel_j(int n, double x);

// J_0(x) .. J_{n_max}(x) from one downward pass.
std::vector<double> bessel_j_array(int n_max, double x);

// Modified Bessel functions I_0, I_1 (unscaled; overflows past x ~ 700).
std::pair<double, double> bessel_i01(double x);

// e^{-x} I_0(x), e^{-x} I_1(x): ascending series below the crossover,
// asymptotic series above; never overflows.
std::pair<double, double> bessel_i01_scaled(double x);

// e^{-x} I_1(x) / x, continued through x = 0 with value 1/2 (the integrand
// factor that makes the z -> 1 endpoint of the partial-wave integrals
// regular).
double bessel_i1e_over_x(double x);

}  // namespace swdecay
