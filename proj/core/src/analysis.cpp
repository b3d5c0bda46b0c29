#include "swdecay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "swdecay/errors.hpp"

namespace swdecay {

namespace {

constexpr double kProminenceFloor = 1e-6;

std::vector<std::size_t> window_indices(const std::vector<double>& t,
                                        double t_lo, double t_hi) {
  if (t_lo > t_hi) throw DomainError("window must satisfy t_lo <= t_hi");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi) idx.push_back(i);
  }
  return idx;
}

// Prominence: height above the larger of the two valley floors reached
// before meeting a strictly higher sample (or the window edge) on each side.
double prominence(const std::vector<double>& w,
                  const std::vector<std::size_t>& idx, std::size_t at) {
  const double peak = w[idx[at]];
  double left_min = peak;
  for (std::size_t j = at; j-- > 0;) {
    const double v = w[idx[j]];
    if (v > peak) break;
    left_min = std::min(left_min, v);
  }
  double right_min = peak;
  for (std::size_t j = at + 1; j < idx.size(); ++j) {
    const double v = w[idx[j]];
    if (v > peak) break;
    right_min = std::min(right_min, v);
  }
  return peak - std::max(left_min, right_min);
}

}  // namespace

PowerLawFit fit_power_law(const PopulationSeries& series, Channel channel,
                          double t_lo, double t_hi) {
  const std::vector<double>& w =
      channel == Channel::m ? series.w_m : series.w_e;
  if (series.t.size() != w.size()) {
    throw DomainError("series time and value arrays differ in length");
  }

  const auto idx = window_indices(series.t, t_lo, t_hi);
  if (idx.size() < 8) {
    throw InsufficientData("power-law fit needs at least 8 points in window");
  }

  std::vector<double> x(idx.size()), y(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double ti = series.t[idx[i]];
    const double wi = w[idx[i]];
    if (!(ti > 0.0) || !(wi > 0.0)) {
      throw NonPositiveValues("power-law fit needs t > 0 and w > 0");
    }
    x[i] = std::log(ti);
    y[i] = std::log(wi);
  }

  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("all window times coincide");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + fit.exponent * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.window_lo = t_lo;
  fit.window_hi = t_hi;
  return fit;
}

OscillationMetrics oscillation_metrics(const std::vector<double>& t,
                                       const std::vector<double>& w,
                                       double t_lo, double t_hi) {
  if (t.size() != w.size()) {
    throw DomainError("time and value arrays differ in length");
  }
  const auto idx = window_indices(t, t_lo, t_hi);

  OscillationMetrics out;
  for (std::size_t i = 1; i + 1 < idx.size(); ++i) {
    const double ym = w[idx[i - 1]], y0 = w[idx[i]], yp = w[idx[i + 1]];
    if (!(y0 > ym && y0 > yp)) continue;
    if (prominence(w, idx, i) < kProminenceFloor) continue;

    // Parabola through the three samples; vertex refines time and height.
    const double ta = t[idx[i - 1]], tb = t[idx[i]], tc = t[idx[i + 1]];
    double tpk = tb, vpk = y0;
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) {
      const double shift = 0.5 * (ym - yp) / denom;  // in [-1, 1] grid units
      const double h = 0.5 * (tc - ta);
      tpk = tb + shift * h;
      vpk = y0 - 0.25 * (ym - yp) * shift;
    }
    out.peak_times.push_back(tpk);
    out.peak_values.push_back(vpk);
  }

  if (out.peak_times.size() < 3) {
    throw TooFewPeaks("need at least 3 local maxima in window");
  }

  double spacing = 0.0;
  for (std::size_t i = 1; i < out.peak_times.size(); ++i) {
    spacing += out.peak_times[i] - out.peak_times[i - 1];
  }
  out.mean_period =
      spacing / static_cast<double>(out.peak_times.size() - 1);
  out.modulation_depth = modulation_depth(t, w, t_lo, t_hi);
  return out;
}

double modulation_depth(const std::vector<double>& t,
                        const std::vector<double>& w, double t_lo,
                        double t_hi) {
  if (t.size() != w.size()) {
    throw DomainError("time and value arrays differ in length");
  }
  const auto idx = window_indices(t, t_lo, t_hi);
  if (idx.empty()) return 0.0;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i : idx) {
    lo = std::min(lo, w[i]);
    hi = std::max(hi, w[i]);
  }
  const double sum = hi + lo;
  if (sum == 0.0) return 0.0;
  return (hi - lo) / sum;
}

double suppression_ratio(const std::vector<double>& t,
                         const std::vector<double>& w,
                         const std::vector<double>& w_reference, double t_lo,
                         double t_hi) {
  if (t.size() != w.size() || t.size() != w_reference.size()) {
    throw DomainError("series and reference must share the time grid");
  }
  const double depth = modulation_depth(t, w, t_lo, t_hi);
  const double depth_ref = modulation_depth(t, w_reference, t_lo, t_hi);
  if (depth == depth_ref) return 1.0;  // covers the all-flat case exactly
  if (depth_ref == 0.0) {
    throw DomainError("reference series has no modulation in window");
  }
  return depth / depth_ref;
}

}  // namespace swdecay
