#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "swdecay/adiabatic.hpp"
#include "swdecay/model.hpp"

namespace swdecay {

// Coupled diffraction-order amplitudes a_n^{m,e}, n in [-n_max, n_max],
// plus the accumulated decay integral q(t) = integral of sum |a_e|^2 dt'
// (norm(t) + gamma*q(t) stays at 1 up to integrator error). Orders beyond
// the truncation are absorbing (treated as zero).
struct LadderState {
  double t = 0.0;
  int n_max = 0;
  std::vector<std::complex<double>> a_m, a_e;
  double decay_integral = 0.0;

  static LadderState initial(int n_max);  // a_0^m = 1, everything else 0

  std::size_t index(int n) const { return static_cast<std::size_t>(n + n_max); }
  std::complex<double> am(int n) const { return a_m[index(n)]; }
  std::complex<double> ae(int n) const { return a_e[index(n)]; }

  double norm() const;           // sum |a_m|^2 + |a_e|^2
  double boundary_norm() const;  // the |n| = n_max shell's share
};

struct LadderDeriv {
  std::vector<std::complex<double>> da_m, da_e;
  double d_decay = 0.0;
};

// Exact right side of the mode ladder:
//   i da_n^m/dt = (n^2 w_r + n d) a_n^m - (Omega/4)(a_{n-1}^e + a_{n+1}^e)
//   i da_n^e/dt = (n^2 w_r + n d - i gamma/2) a_n^e
//                 - (Omega*/4)(a_{n-1}^m + a_{n+1}^m)
LadderDeriv rhs_full(const ModelParams& params, const LadderState& state);

struct IntegrateOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int truncation = 0;         // 0: auto ceil(|Omega| t_end) + 16
  int max_truncation = 4096;  // restart cap before TruncationExceeded
  double tail_tol = 1e-10;    // boundary shell may carry 10x this before a
                              // restart with a wider ladder
  double fixed_step = 0.0;    // > 0 disables adaptivity (order tests)
  std::vector<double> output_times;  // empty: 201 uniform points to t_end
};

struct LadderResult {
  PopulationSeries series;           // method = ladder
  std::vector<double> boundary_norm; // per output time
  std::vector<double> decay_integral;
  std::vector<LadderState> snapshots;  // state at each output time
  LadderState final_state;
  int truncation_used = 0;
};

// Adaptive embedded Runge-Kutta 5(4) integration from the one-beam initial
// condition. Steps land exactly on the output times; a boundary-shell leak
// restarts the run from t = 0 with a wider ladder. Throws StepSizeUnderflow
// or TruncationExceeded.
LadderResult integrate(const ModelParams& params, double t_end,
                       const IntegrateOptions& opt = {});

struct DeviationSeries {
  std::vector<double> t;
  std::vector<double> d_m, d_e;  // |w^{full} - w^{adiabatic}| per channel
};

// Distance between the full ladder (recoil as given) and its adiabatic
// reduction (recoil forced to zero) on the given times; identically zero
// when recoil is already zero.
DeviationSeries adiabaticity_probe(const ModelParams& params,
                                   const std::vector<double>& times,
                                   const IntegrateOptions& opt = {});

}  // namespace swdecay
