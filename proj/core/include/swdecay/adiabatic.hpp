#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "swdecay/model.hpp"

namespace swdecay {

// Expansion coefficients of the initial state over the two quasienergy
// branches. Sum rules: a_m_plus + a_m_minus = 1, a_e_plus + a_e_minus = 0.
struct BranchCoefficients {
  std::complex<double> a_m_plus, a_m_minus;
  std::complex<double> a_e_plus, a_e_minus;
};

// Throws BranchDegenerate within eps_branch (in units of gamma) of a
// degeneracy 2|Omega cos xi| = gamma; wavefunctions() is regular there.
BranchCoefficients coefficients(const ModelParams& params, double xi,
                                double eps_branch = 1e-6);

struct WavePair {
  std::complex<double> phi_m;
  std::complex<double> phi_e;
};

// Exact solution of the adiabatic initial-value problem phi_m(0)=1,
// phi_e(0)=0, evaluated in the branch-point-regular form
//   phi_m = e^{-gamma t/4} [cos(s t) + (gamma/4) sin(s t)/s]
//   phi_e = i (Omega* cos xi / 2) e^{-gamma t/4} sin(s t)/s
// with s = (1/2) sqrt(|Omega|^2 cos^2 xi - gamma^2/4); cos(st) and
// sin(st)/s are entire in s^2 (series near s = 0, fused exponentials on
// the hyperbolic side so nothing overflows for any gamma*t).
WavePair wavefunctions(const ModelParams& params, double xi, double t);

// (1/pi) |phi_m|^2, (1/pi) |phi_e|^2 per unit xi.
std::pair<double, double> density(const ModelParams& params, double xi,
                                  double t);

// Long-time near-node limit: (1/pi) e^{-(|Omega|^2 t/gamma)(xi-pi/2)^2} and
// (1/pi) (|Omega|^2/gamma^2)(xi-pi/2)^2 e^{-(|Omega|^2 t/gamma)(xi-pi/2)^2}.
std::pair<double, double> gaussian_density(const ModelParams& params,
                                           double xi, double t);

struct QuadratureSpec {
  double abs_tol = 1e-8;
  int max_depth = 20;
};

// Populations per standing-wave period, (1/pi) integral over xi in [0, pi]
// of the densities; integrates [0, pi/2] adaptively and doubles (the
// densities are symmetric about the node).
std::pair<double, double> total_populations(const ModelParams& params,
                                            double t,
                                            const QuadratureSpec& quad = {});

// Long-time power laws: w_m = sqrt(gamma)/(|Omega| sqrt(pi t)),
// w_e = 1/(2 |Omega| sqrt(pi gamma) t^{3/2}). Requires t > 0.
std::pair<double, double> asymptotic_totals(const ModelParams& params,
                                            double t);

// Decaying two-level dynamics at full coupling (the antinode column of the
// standing wave): |phi_m(0,t)|^2, |phi_e(0,t)|^2.
std::pair<double, double> two_level_reference(const ModelParams& params,
                                              double t);

// Complex amplitudes sampled over a spatial grid at fixed t.
struct FieldProfile {
  SpatialGrid grid;
  double t = 0.0;
  std::vector<std::complex<double>> phi_m, phi_e;
};

FieldProfile field_profile(const ModelParams& params, const SpatialGrid& grid,
                           double t);

enum class Method { quadrature, mode_sum, ladder, asymptotic, gaussian,
                    two_level };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

// Time series of total populations; 0 <= w <= 1, and w_m(0)=1, w_e(0)=0 for
// every method that honors the initial condition (all but asymptotic).
struct PopulationSeries {
  std::vector<double> t;
  std::vector<double> w_m, w_e;
  Method method = Method::quadrature;
};

}  // namespace swdecay
