#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "swdecay/model.hpp"

namespace swdecay {

// Momentum-transfer spectrum at fixed t: complex amplitudes and partial
// probabilities per diffraction order n in [-n_max, n_max]. The m-channel
// occupies even orders and the e-channel odd orders (phi_m is pi-periodic
// in xi, phi_e is cos-odd), so the complementary entries vanish to
// numerical noise; +n and -n carry equal weight at normal incidence.
// Parseval ties sum |a_n|^2 to the quadrature totals per channel.
struct DiffractionSpectrum {
  double t = 0.0;
  int n_max = 0;
  std::vector<std::complex<double>> a_m, a_e;  // index i <-> order i - n_max
  std::vector<double> w_m, w_e;

  std::size_t index(int n) const { return static_cast<std::size_t>(n + n_max); }
  std::complex<double> amp_m(int n) const { return a_m[index(n)]; }
  std::complex<double> amp_e(int n) const { return a_e[index(n)]; }
  double weight_m(int n) const { return w_m[index(n)]; }
  double weight_e(int n) const { return w_e[index(n)]; }
};

// Uniform-grid discrete Fourier transform of the adiabatic wavefunctions
// over one 2*pi period: a_n = (1/M) sum_j phi(xi_j) e^{-i n xi_j}. The grid
// starts at M = max(64, 8*n_max) rounded to a power of two and doubles until
// the top-order amplitudes move by less than 1e-10. Throws GridNotConverged.
DiffractionSpectrum amplitudes(const ModelParams& params, double t, int n_max);

// Closed-form partial probability of the even order 2n (metastable channel):
// a Bessel J_2n term plus a z-integral against I_0/I_1 kernels, evaluated in
// exponentially scaled form so gamma*t of several hundred cannot overflow.
// Equals weight_m(2n) of amplitudes(). n >= 0.
double partial_m(const ModelParams& params, double t, int n,
                 double quad_tol = 1e-10);

// Closed-form partial probability of the odd order 2n+1 (excited channel).
// Equals weight_e(2n+1) of amplitudes(). n >= 0.
double partial_e(const ModelParams& params, double t, int n,
                 double quad_tol = 1e-10);

struct SumTotals {
  double w_m = 0.0;
  double w_e = 0.0;
  int n_used = 0;
};

// Channel totals by summing closed-form partials outward in |n| until the
// last two shells contribute less than tail_tol. n_max_limit < 0 selects the
// default cap 4*ceil(|Omega| t) + 32; beyond it throws TailNotConverged.
SumTotals totals_from_sum(const ModelParams& params, double t,
                          double tail_tol = 1e-10, int n_max_limit = -1);

}  // namespace swdecay
