#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "swdecay/model.hpp"

namespace swdecay {

// Complex eigenvalue pair of the non-Hermitian 2x2 position-parameterized
// Hamiltonian. Invariants at every xi:
//   gamma_plus + gamma_minus = -i*gamma/2        (trace)
//   gamma_plus * gamma_minus = -|Omega|^2 cos^2(xi) / 4   (determinant)
//   Im(gamma_pm) <= 0
struct QuasienergyPair {
  std::complex<double> gamma_plus;
  std::complex<double> gamma_minus;
};

// gamma_pm(xi) = -i*gamma/4 +/- (1/2) sqrt(|Omega|^2 cos^2 xi - gamma^2/4),
// principal root: positive real when the argument is positive,
// +i sqrt(-arg) otherwise. The "+" branch is the slowly decaying one.
QuasienergyPair gamma_pm(const ModelParams& params, double xi);

// Level widths Gamma_pm = -2 Im(gamma_pm)
//            = gamma/2 -/+ Re sqrt(gamma^2/4 - |Omega|^2 cos^2 xi).
// Both lie in [0, gamma]; they always sum to gamma.
std::pair<double, double> widths(const ModelParams& params, double xi);

// Weak-coupling effective complex potential -i |Omega|^2 cos^2(xi) / (2 gamma).
std::complex<double> cy_potential(const ModelParams& params, double xi);

// Parabolic near-node width (|Omega|^2/gamma) (xi - pi/2)^2.
double width_parabolic(const ModelParams& params, double xi);

// Local coupling magnitude |Omega cos xi|.
double omega_eff(const ModelParams& params, double xi);

// Half-width (in xi) of the interval around a node that still carries
// population at time t: (1/|Omega|) sqrt(gamma/t). Requires t > 0.
double delta_x(const ModelParams& params, double t);

// Zone boundaries Re(gamma_pm) +/- Gamma_pm/2 per grid point.
struct ZoneTable {
  std::vector<double> xi;
  std::vector<double> re_gp, im_gp, re_gm, im_gm;
  std::vector<double> width_p, width_m;
  std::vector<double> upper_p, lower_p, upper_m, lower_m;
};

ZoneTable zone_table(const ModelParams& params, const SpatialGrid& grid);

}  // namespace swdecay
