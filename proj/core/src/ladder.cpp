#include "swdecay/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "swdecay/errors.hpp"

namespace swdecay {

namespace {

using Cvec = std::vector<std::complex<double>>;

// Flat layout: [a_m(-N..N), a_e(-N..N), decay integral] so one vector is
// the entire integrator state.
std::size_t flat_size(int n_max) {
  return 2 * (2 * static_cast<std::size_t>(n_max) + 1) + 1;
}

void rhs_flat(const ModelParams& p, const Cvec& y, Cvec& dy, int n_max) {
  const int sz = 2 * n_max + 1;
  const std::complex<double> i_unit(0.0, 1.0);
  const std::complex<double> om4 = 0.25 * p.omega();
  const std::complex<double> om4c = std::conj(om4);
  const double half_gamma = 0.5 * p.gamma;

  double excited_norm = 0.0;
  for (int idx = 0; idx < sz; ++idx) {
    const double n = static_cast<double>(idx - n_max);
    const double rot = p.recoil * n * n + p.detuning * n;
    const std::complex<double> e_lo = idx > 0 ? y[sz + idx - 1] : 0.0;
    const std::complex<double> e_hi = idx + 1 < sz ? y[sz + idx + 1] : 0.0;
    const std::complex<double> m_lo = idx > 0 ? y[idx - 1] : 0.0;
    const std::complex<double> m_hi = idx + 1 < sz ? y[idx + 1] : 0.0;
    dy[idx] = -i_unit * rot * y[idx] + i_unit * om4 * (e_lo + e_hi);
    dy[sz + idx] = (-i_unit * rot - half_gamma) * y[sz + idx] +
                   i_unit * om4c * (m_lo + m_hi);
    excited_norm += std::norm(y[sz + idx]);
  }
  dy[2 * sz] = excited_norm;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
     -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal the last stage row (FSAL); the embedded 4th-order
// weights give the error estimate.
constexpr double kB4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695,
                           393.0 / 640,       -92097.0 / 339200,
                           187.0 / 2100,      1.0 / 40};

struct BoundaryLeak {};

struct Recorder {
  std::vector<double> times;
  std::size_t next = 0;
  LadderResult* out = nullptr;
  int n_max = 0;

  void record(double t, const Cvec& y) {
    const int sz = 2 * n_max + 1;
    double wm = 0.0, we = 0.0;
    for (int i = 0; i < sz; ++i) {
      wm += std::norm(y[i]);
      we += std::norm(y[sz + i]);
    }
    LadderState s;
    s.t = t;
    s.n_max = n_max;
    s.a_m.assign(y.begin(), y.begin() + sz);
    s.a_e.assign(y.begin() + sz, y.begin() + 2 * sz);
    s.decay_integral = y[2 * sz].real();

    out->series.t.push_back(t);
    out->series.w_m.push_back(wm);
    out->series.w_e.push_back(we);
    out->boundary_norm.push_back(s.boundary_norm());
    out->decay_integral.push_back(s.decay_integral);
    out->snapshots.push_back(std::move(s));
  }
};

double error_norm(const Cvec& y0, const Cvec& y1, const Cvec& err,
                  double rel_tol, double abs_tol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = std::abs(err[i]) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

LadderResult integrate_once(const ModelParams& params, double t_end,
                            int n_max, const IntegrateOptions& opt) {
  const std::size_t dim = flat_size(n_max);
  const int sz = 2 * n_max + 1;

  LadderResult result;
  result.series.method = Method::ladder;
  result.truncation_used = n_max;

  Recorder rec;
  rec.out = &result;
  rec.n_max = n_max;
  if (!opt.output_times.empty()) {
    rec.times = opt.output_times;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      if (rec.times[i] < 0.0 || rec.times[i] > t_end ||
          (i > 0 && rec.times[i] <= rec.times[i - 1])) {
        throw DomainError("output times must increase within [0, t_end]");
      }
    }
  } else {
    const std::size_t count = 201;
    for (std::size_t i = 0; i < count; ++i) {
      rec.times.push_back(t_end * static_cast<double>(i) /
                          static_cast<double>(count - 1));
    }
  }

  Cvec y(dim, 0.0);
  y[static_cast<std::size_t>(n_max)] = 1.0;  // a_0^m
  double t = 0.0;

  while (rec.next < rec.times.size() && rec.times[rec.next] <= 0.0) {
    rec.record(t, y);
    ++rec.next;
  }
  if (t_end == 0.0) {
    result.final_state = result.snapshots.empty()
                             ? LadderState::initial(n_max)
                             : result.snapshots.back();
    return result;
  }

  // Initial step from the fastest rate in the system.
  const double rate =
      std::max({params.gamma, params.rabi,
                std::fabs(params.detuning) * n_max,
                params.recoil * static_cast<double>(n_max) * n_max, 1e-3});
  double h = std::min(t_end, 0.05 / rate);
  if (opt.fixed_step > 0.0) h = opt.fixed_step;

  Cvec k[7];
  for (auto& stage : k) stage.assign(dim, 0.0);
  Cvec ytmp(dim), ynew(dim), errv(dim);
  rhs_flat(params, y, k[0], n_max);

  const double h_floor = 1e-14 * std::max(t_end, 1.0);
  const double leak_limit = 10.0 * opt.tail_tol;

  while (t < t_end) {
    double h_try = std::min(h, t_end - t);
    if (rec.next < rec.times.size()) {
      h_try = std::min(h_try, rec.times[rec.next] - t);
    }
    if (h_try < h_floor) {
      throw StepSizeUnderflow("ladder step size underflow");
    }

    for (int stage = 1; stage < 7; ++stage) {
      for (std::size_t i = 0; i < dim; ++i) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < stage; ++j) acc += kA[stage][j] * k[j][i];
        ytmp[i] = y[i] + h_try * acc;
      }
      rhs_flat(params, ytmp, k[stage], n_max);
    }
    // Stage 6 state IS the 5th-order solution (kA[6] row = b5 weights).
    ynew = ytmp;
    for (std::size_t i = 0; i < dim; ++i) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < 7; ++j) acc += kB4[j] * k[j][i];
      errv[i] = ynew[i] - (y[i] + h_try * acc);
    }

    if (opt.fixed_step > 0.0) {
      y.swap(ynew);
      t += h_try;
      k[0] = k[6];
    } else {
      const double err = error_norm(y, ynew, errv, opt.rel_tol, opt.abs_tol);
      if (err <= 1.0) {
        y.swap(ynew);
        t += h_try;
        k[0] = k[6];
        const double grow =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = h_try * std::clamp(grow, 0.2, 5.0);
      } else {
        // k[0] still holds f(t, y); only stages 1..6 were clobbered.
        h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        continue;
      }
    }

    // Boundary-shell audit: leakage means the truncation is biting.
    double boundary = std::norm(y[0]) + std::norm(y[sz - 1]) +
                      std::norm(y[sz]) + std::norm(y[2 * sz - 1]);
    if (n_max > 0 && boundary > leak_limit) throw BoundaryLeak{};

    while (rec.next < rec.times.size() &&
           t >= rec.times[rec.next] - 1e-12 * std::max(1.0, t_end)) {
      rec.record(rec.times[rec.next], y);
      ++rec.next;
    }
  }

  result.final_state.t = t;
  result.final_state.n_max = n_max;
  result.final_state.a_m.assign(y.begin(), y.begin() + sz);
  result.final_state.a_e.assign(y.begin() + sz, y.begin() + 2 * sz);
  result.final_state.decay_integral = y[2 * sz].real();
  return result;
}

}  // namespace

LadderState LadderState::initial(int n_max) {
  LadderState s;
  s.n_max = n_max;
  const std::size_t sz = 2 * static_cast<std::size_t>(n_max) + 1;
  s.a_m.assign(sz, 0.0);
  s.a_e.assign(sz, 0.0);
  s.a_m[static_cast<std::size_t>(n_max)] = 1.0;
  return s;
}

double LadderState::norm() const {
  double acc = 0.0;
  for (const auto& v : a_m) acc += std::norm(v);
  for (const auto& v : a_e) acc += std::norm(v);
  return acc;
}

double LadderState::boundary_norm() const {
  if (a_m.empty()) return 0.0;
  return std::norm(a_m.front()) + std::norm(a_m.back()) +
         std::norm(a_e.front()) + std::norm(a_e.back());
}

LadderDeriv rhs_full(const ModelParams& params, const LadderState& state) {
  params.validate();
  const std::size_t sz = 2 * static_cast<std::size_t>(state.n_max) + 1;
  if (state.a_m.size() != sz || state.a_e.size() != sz) {
    throw DomainError("ladder state arrays must span -n_max..n_max");
  }
  Cvec y(flat_size(state.n_max), 0.0);
  std::copy(state.a_m.begin(), state.a_m.end(), y.begin());
  std::copy(state.a_e.begin(), state.a_e.end(),
            y.begin() + static_cast<std::ptrdiff_t>(sz));
  Cvec dy(y.size(), 0.0);
  rhs_flat(params, y, dy, state.n_max);

  LadderDeriv d;
  d.da_m.assign(dy.begin(), dy.begin() + static_cast<std::ptrdiff_t>(sz));
  d.da_e.assign(dy.begin() + static_cast<std::ptrdiff_t>(sz),
                dy.begin() + static_cast<std::ptrdiff_t>(2 * sz));
  d.d_decay = dy[2 * sz].real();
  return d;
}

LadderResult integrate(const ModelParams& params, double t_end,
                       const IntegrateOptions& opt) {
  params.validate();
  if (!(t_end >= 0.0)) throw DomainError("integrate needs t_end >= 0");

  int n_max = opt.truncation > 0
                  ? opt.truncation
                  : static_cast<int>(std::ceil(params.rabi * t_end)) + 16;
  n_max = std::max(n_max, 1);

  for (;;) {
    try {
      return integrate_once(params, t_end, n_max, opt);
    } catch (const BoundaryLeak&) {
      const int wider = n_max + std::max(8, n_max / 2);
      if (wider > opt.max_truncation) {
        throw TruncationExceeded("ladder kept leaking at the truncation cap");
      }
      n_max = wider;
    }
  }
}

DeviationSeries adiabaticity_probe(const ModelParams& params,
                                   const std::vector<double>& times,
                                   const IntegrateOptions& opt) {
  params.validate();
  if (times.empty()) throw DomainError("adiabaticity_probe needs times");

  DeviationSeries d;
  d.t = times;
  d.d_m.assign(times.size(), 0.0);
  d.d_e.assign(times.size(), 0.0);
  if (params.recoil == 0.0) return d;  // both runs would be identical

  IntegrateOptions run = opt;
  run.output_times = times;
  const double t_end = times.back();

  const LadderResult full = integrate(params, t_end, run);
  ModelParams reduced = params;
  reduced.recoil = 0.0;
  const LadderResult adiabatic = integrate(reduced, t_end, run);

  for (std::size_t i = 0; i < times.size(); ++i) {
    d.d_m[i] = std::fabs(full.series.w_m[i] - adiabatic.series.w_m[i]);
    d.d_e[i] = std::fabs(full.series.w_e[i] - adiabatic.series.w_e[i]);
  }
  return d;
}

}  // namespace swdecay
