#include "swdecay/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "swdecay/adiabatic.hpp"
#include "swdecay/errors.hpp"
#include "swdecay/quadrature.hpp"
#include "swdecay/special_functions.hpp"

namespace swdecay {

namespace {

// Direct DFT of the wavefunctions sampled on M uniform points over the
// 2*pi intensity period. The root table is built with the exact half-turn
// antisymmetry root[j + M/2] = -root[j], which makes the even/odd channel
// selection rules hold to rounding instead of to table phase error.
DiffractionSpectrum dft_spectrum(const ModelParams& params, double t,
                                 int n_max, std::size_t m_points) {
  const std::size_t m = m_points;
  std::vector<std::complex<double>> phi_m(m), phi_e(m), root(m);
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double angle = -2.0 * kPi * static_cast<double>(j) /
                         static_cast<double>(m);
    root[j] = {std::cos(angle), std::sin(angle)};
    root[j + m / 2] = -root[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double xi = 2.0 * kPi * static_cast<double>(j) /
                      static_cast<double>(m);
    const WavePair w = wavefunctions(params, xi, t);
    phi_m[j] = w.phi_m;
    phi_e[j] = w.phi_e;
  }

  DiffractionSpectrum s;
  s.t = t;
  s.n_max = n_max;
  const std::size_t count = 2 * static_cast<std::size_t>(n_max) + 1;
  s.a_m.assign(count, {});
  s.a_e.assign(count, {});
  s.w_m.assign(count, 0.0);
  s.w_e.assign(count, 0.0);
  for (int n = -n_max; n <= n_max; ++n) {
    std::complex<double> am{}, ae{};
    // root index (n*j) mod m without sign trouble
    const std::size_t stride =
        static_cast<std::size_t>(((n % static_cast<int>(m)) +
                                  static_cast<int>(m))) %
        m;
    std::size_t r = 0;
    for (std::size_t j = 0; j < m; ++j) {
      am += phi_m[j] * root[r];
      ae += phi_e[j] * root[r];
      r += stride;
      if (r >= m) r -= m;
    }
    const double inv = 1.0 / static_cast<double>(m);
    s.a_m[s.index(n)] = am * inv;
    s.a_e[s.index(n)] = ae * inv;
    s.w_m[s.index(n)] = std::norm(am * inv);
    s.w_e[s.index(n)] = std::norm(ae * inv);
  }
  return s;
}

double top_order_change(const DiffractionSpectrum& a,
                        const DiffractionSpectrum& b) {
  double d = 0.0;
  for (const int n : {-a.n_max, a.n_max}) {
    d = std::max(d, std::abs(a.amp_m(n) - b.amp_m(n)));
    d = std::max(d, std::abs(a.amp_e(n) - b.amp_e(n)));
  }
  return d;
}

}  // namespace

DiffractionSpectrum amplitudes(const ModelParams& params, double t,
                               int n_max) {
  params.validate();
  if (n_max < 1) throw DomainError("amplitudes need n_max >= 1");
  if (!(t >= 0.0)) throw DomainError("amplitudes need t >= 0");

  std::size_t m = 64;
  while (m < 8 * static_cast<std::size_t>(n_max)) m <<= 1;

  DiffractionSpectrum prev = dft_spectrum(params, t, n_max, m);
  for (m <<= 1; m <= (std::size_t{1} << 20); m <<= 1) {
    DiffractionSpectrum next = dft_spectrum(params, t, n_max, m);
    if (top_order_change(prev, next) < 1e-10) return next;
    prev = std::move(next);
  }
  throw GridNotConverged("Fourier grid hit its size cap before amplitudes "
                         "stabilized");
}

double partial_m(const ModelParams& params, double t, int n,
                 double quad_tol) {
  params.validate();
  if (n < 0) throw DomainError("partial_m needs n >= 0");
  if (!(t >= 0.0)) throw DomainError("partial_m needs t >= 0");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  if (!(quad_tol > 0.0)) throw DomainError("partial_m needs quad_tol > 0");

  const double gt4 = 0.25 * params.gamma * t;
  const double wt2 = 0.5 * params.rabi * t;
  const int order = 2 * n;

  // Amplitude form with e^{-gamma t/4} distributed into the kernels:
  // every exponential argument is <= 0, so gamma*t of hundreds stays finite.
  const auto f = [&](double z) {
    const double r = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
    const double u = gt4 * r;
    const double damp = std::exp(-gt4 * (1.0 - r));
    return bessel_j(order, wt2 * z) * damp *
           (gt4 * bessel_i1e_over_x(u) + bessel_i01_scaled(u).first);
  };

  AdaptiveOptions opt;
  opt.abs_tol = quad_tol;
  const double integral = integrate_adaptive(f, 0.0, 1.0, opt);
  const double a = std::exp(-gt4) * bessel_j(order, wt2) + gt4 * integral;
  return a * a;
}

double partial_e(const ModelParams& params, double t, int n,
                 double quad_tol) {
  params.validate();
  if (n < 0) throw DomainError("partial_e needs n >= 0");
  if (!(t >= 0.0)) throw DomainError("partial_e needs t >= 0");
  if (t == 0.0) return 0.0;
  if (!(quad_tol > 0.0)) throw DomainError("partial_e needs quad_tol > 0");

  const double gt4 = 0.25 * params.gamma * t;
  const double wt2 = 0.5 * params.rabi * t;
  const int order = 2 * n;

  const auto f = [&](double z) {
    const double r = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
    const double u = gt4 * r;
    const double damp = std::exp(-gt4 * (1.0 - r));
    return damp * bessel_i01_scaled(u).first *
           (bessel_j(order + 2, wt2 * z) - bessel_j(order, wt2 * z));
  };

  AdaptiveOptions opt;
  opt.abs_tol = quad_tol;
  const double b =
      0.25 * params.rabi * t * integrate_adaptive(f, 0.0, 1.0, opt);
  return b * b;
}

SumTotals totals_from_sum(const ModelParams& params, double t,
                          double tail_tol, int n_max_limit) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("totals_from_sum needs t >= 0");
  if (!(tail_tol > 0.0)) throw DomainError("totals_from_sum needs tail_tol > 0");
  if (n_max_limit < 0) {
    n_max_limit = 4 * static_cast<int>(std::ceil(params.rabi * t)) + 32;
  }

  const double qtol = std::min(1e-10, tail_tol);
  SumTotals totals;
  totals.w_m = partial_m(params, t, 0, qtol);

  // Individual partials oscillate in n below the Bessel turning point
  // |Omega| t / 2, so the two-shell tail estimate only applies past it.
  const int min_shell = static_cast<int>(std::ceil(0.5 * params.rabi * t)) + 1;

  double shell_prev = totals.w_m;
  for (int k = 1;; ++k) {
    if (k > n_max_limit) {
      throw TailNotConverged("mode sum still carried weight at the order cap");
    }
    double shell;
    if (k % 2 == 1) {
      shell = 2.0 * partial_e(params, t, (k - 1) / 2, qtol);
      totals.w_e += shell;
    } else {
      shell = 2.0 * partial_m(params, t, k / 2, qtol);
      totals.w_m += shell;
    }
    totals.n_used = k;
    if (k >= min_shell && shell + shell_prev < tail_tol) break;
    shell_prev = shell;
  }
  return totals;
}

}  // namespace swdecay
