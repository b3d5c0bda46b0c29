#include "swdecay/special_functions.hpp"

#include <algorithm>
#include <cmath>

#include "swdecay/errors.hpp"
#include "swdecay/model.hpp"

namespace swdecay {

namespace {

// Start order for the downward recurrence: far enough above both the target
// order and the turning point x that the seeded tail has fully converged to
// the true minimal solution by the time it reaches the kept orders.
int miller_start(int n, double x) {
  const int base = std::max(n, static_cast<int>(std::ceil(x)));
  int m = base + 20 +
          static_cast<int>(std::ceil(12.0 * std::sqrt(base + 1.0)));
  if (m % 2) ++m;  // even start keeps the normalization sum aligned
  return m;
}

constexpr long double kRescaleLimit = 1e280L;
constexpr long double kRescale = 1e-280L;

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0) throw DomainError("bessel_j needs n >= 0");
  if (!(x >= 0.0)) throw DomainError("bessel_j needs x >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;

  const int m = miller_start(n, x);
  const long double two_over_x = 2.0L / static_cast<long double>(x);

  long double upper = 0.0L;   // J_{k+1} seed
  long double cur = 1e-30L;   // J_k seed at k = m
  long double target = 0.0L;
  long double sum = 0.0L;     // builds J_0 + 2 sum_{even k >= 2} J_k
  for (int k = m; k >= 1; --k) {
    if (k == n) target = cur;
    if (k % 2 == 0) sum += 2.0L * cur;
    const long double lower = static_cast<long double>(k) * two_over_x * cur -
                              upper;
    upper = cur;
    cur = lower;
    if (fabsl(cur) > kRescaleLimit) {
      cur *= kRescale;
      upper *= kRescale;
      sum *= kRescale;
      target *= kRescale;
    }
  }
  if (n == 0) target = cur;
  sum += cur;
  return static_cast<double>(target / sum);
}

std::vector<double> bessel_j_array(int n_max, double x) {
  if (n_max < 0) throw DomainError("bessel_j_array needs n_max >= 0");
  if (!(x >= 0.0)) throw DomainError("bessel_j_array needs x >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  const int m = miller_start(n_max, x);
  const long double two_over_x = 2.0L / static_cast<long double>(x);

  std::vector<long double> kept(out.size(), 0.0L);
  long double upper = 0.0L;
  long double cur = 1e-30L;
  long double sum = 0.0L;
  for (int k = m; k >= 1; --k) {
    if (k <= n_max) kept[static_cast<std::size_t>(k)] = cur;
    if (k % 2 == 0) sum += 2.0L * cur;
    const long double lower = static_cast<long double>(k) * two_over_x * cur -
                              upper;
    upper = cur;
    cur = lower;
    if (fabsl(cur) > kRescaleLimit) {
      cur *= kRescale;
      upper *= kRescale;
      sum *= kRescale;
      for (auto& v : kept) v *= kRescale;
    }
  }
  kept[0] = cur;
  sum += cur;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(kept[i] / sum);
  }
  return out;
}

namespace {

// Crossover between the ascending series (exact up to rounding, but needing
// e^{+x} headroom) and the large-x asymptotic series, whose optimal-truncation
// error ~ e^{-2x} is ~1e-22 here.
constexpr double kIAsymptoticSwitch = 25.0;

struct ScaledI {
  long double i0;        // e^{-x} I_0
  long double i1;        // e^{-x} I_1
  long double i1_over_x; // e^{-x} I_1 / x
};

ScaledI scaled_i_series(double x) {
  const long double q =
      0.25L * static_cast<long double>(x) * static_cast<long double>(x);
  long double t0 = 1.0L, s0 = 1.0L;      // sum q^k/(k!)^2
  long double t1 = 0.5L, s1 = 0.5L;      // sum q^k/(k!(k+1)!) / 2... times x
  for (int k = 1; k <= 200; ++k) {
    const long double kk = static_cast<long double>(k);
    t0 *= q / (kk * kk);
    t1 *= q / (kk * (kk + 1.0L));
    s0 += t0;
    s1 += t1;
    if (t0 < 1e-22L * s0) break;
  }
  const long double e = expl(-static_cast<long double>(x));
  ScaledI r;
  r.i0 = s0 * e;
  r.i1_over_x = s1 * e;  // I_1/x = (1/2) sum q^k/(k!(k+1)!)
  r.i1 = r.i1_over_x * static_cast<long double>(x);
  return r;
}

// e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} [1 - (mu-1)/(8x) + ...], mu = 4 nu^2,
// truncated at the smallest term.
long double scaled_i_asymptotic(double mu, double x) {
  long double term = 1.0L, sum = 1.0L;
  long double prev = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    const long double num =
        static_cast<long double>(mu) -
        static_cast<long double>((2 * k - 1)) * (2 * k - 1);
    term *= -num / (8.0L * static_cast<long double>(k) *
                    static_cast<long double>(x));
    if (std::fabs(static_cast<double>(term)) >
        std::fabs(static_cast<double>(prev))) {
      break;
    }
    sum += term;
    prev = term;
    if (std::fabs(static_cast<double>(term)) <
        1e-22L * std::fabs(static_cast<double>(sum))) {
      break;
    }
  }
  return sum / sqrtl(2.0L * static_cast<long double>(kPi) *
                     static_cast<long double>(x));
}

ScaledI scaled_i(double x) {
  if (x < kIAsymptoticSwitch) return scaled_i_series(x);
  ScaledI r;
  r.i0 = scaled_i_asymptotic(0.0, x);
  r.i1 = scaled_i_asymptotic(4.0, x);
  r.i1_over_x = r.i1 / static_cast<long double>(x);
  return r;
}

}  // namespace

std::pair<double, double> bessel_i01_scaled(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i01 needs x >= 0");
  const ScaledI r = scaled_i(x);
  return {static_cast<double>(r.i0), static_cast<double>(r.i1)};
}

std::pair<double, double> bessel_i01(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i01 needs x >= 0");
  const ScaledI r = scaled_i(x);
  const long double e = expl(static_cast<long double>(x));
  return {static_cast<double>(r.i0 * e), static_cast<double>(r.i1 * e)};
}

double bessel_i1e_over_x(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i1e_over_x needs x >= 0");
  return static_cast<double>(scaled_i(x).i1_over_x);
}

}  // namespace swdecay
