#pragma once

#include <utility>
#include <vector>

#include "swdecay/adiabatic.hpp"

namespace swdecay {

enum class Channel { m, e };

// Result of an ordinary least-squares fit of log w on log t.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;      // exp(intercept)
  double rms_residual = 0.0;   // in log space
  double window_lo = 0.0, window_hi = 0.0;
};

// Fits w(t) ~ prefactor * t^exponent over window times in [t_lo, t_hi].
// Throws InsufficientData (< 8 points in window) or NonPositiveValues.
PowerLawFit fit_power_law(const PopulationSeries& series, Channel channel,
                          double t_lo, double t_hi);

struct OscillationMetrics {
  std::vector<double> peak_times;   // strictly increasing
  std::vector<double> peak_values;
  double mean_period = 0.0;
  double modulation_depth = 0.0;    // (max - min)/(max + min) in window
};

// Locates local maxima (3-point parabolic refinement, minimum prominence
// 1e-6) of w(t) inside the window. Throws TooFewPeaks below 3 maxima.
OscillationMetrics oscillation_metrics(const std::vector<double>& t,
                                       const std::vector<double>& w,
                                       double t_lo, double t_hi);

// (max - min)/(max + min) of the samples inside the window, 0 for a flat
// or empty window.
double modulation_depth(const std::vector<double>& t,
                        const std::vector<double>& w, double t_lo,
                        double t_hi);

// modulation_depth(series)/modulation_depth(reference) over a common grid.
double suppression_ratio(const std::vector<double>& t,
                         const std::vector<double>& w,
                         const std::vector<double>& w_reference, double t_lo,
                         double t_hi);

}  // namespace swdecay
