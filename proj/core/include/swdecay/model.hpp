#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace swdecay {

inline constexpr double kPi = 3.14159265358979323846;

// Dimensionless parameters of the driven two-level atom. The decay width
// gamma sets the unit system (gamma = 1 by default); rabi is |Omega|/gamma,
// recoil is omega_r/gamma, detuning is delta/gamma, times are gamma*t.
struct ModelParams {
  double rabi = 1.0;
  double rabi_phase = 0.0;
  double gamma = 1.0;
  double recoil = 0.0;
  double detuning = 0.0;

  std::complex<double> omega() const {
    return std::polar(rabi, rabi_phase);
  }

  // Throws DomainError unless rabi >= 0, gamma >= 0, recoil >= 0 (gamma = 0
  // is the unitary limit; operations with a 1/gamma reject it themselves).
  void validate() const;
};

// Uniform grid of dimensionless positions xi = k*x.
struct SpatialGrid {
  std::vector<double> xi;

  // count >= 3 points, endpoints included.
  static SpatialGrid uniform(std::size_t count, double lo = 0.0,
                             double hi = kPi);
};

// Strictly increasing times, t[0] >= 0.
struct TimeGrid {
  std::vector<double> t;

  static TimeGrid uniform(std::size_t count, double t0, double t1);
};

// Validity diagnostics for the adiabatic, narrow-zone, long-time regime.
// Each flag is true iff its inequality holds with the configured margin;
// the adiabaticity bound involves 1/omega_r and cannot be evaluated at
// recoil = 0.
struct RegimeReport {
  double narrow_zone_ratio = 0.0;      // |Omega|^2 t / gamma
  double adiabaticity_ratio = 0.0;     // |Omega| t / sqrt(gamma/omega_r)
  double strong_coupling_ratio = 0.0;  // |Omega| / gamma
  double transverse_drift_ratio = 0.0; // k|v0x| t * |Omega| sqrt(t/gamma)
  bool narrow_zone = false;
  bool adiabatic = false;
  bool adiabaticity_evaluable = false;
  bool strong_coupling = false;
  bool transverse_ok = false;
};

// v0x is the dimensionless transverse velocity k*v0x/gamma; margin > 1
// quantifies every ">>" in the regime inequalities.
RegimeReport validate_regime(const ModelParams& params, double t, double v0x,
                             double margin = 3.0);

}  // namespace swdecay
