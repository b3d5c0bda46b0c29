#include "swdecay/quasienergy.hpp"

#include <cmath>
#include <cstddef>

#include "swdecay/errors.hpp"

namespace swdecay {

QuasienergyPair gamma_pm(const ModelParams& params, double xi) {
  const double g = params.gamma;
  const double wc = params.rabi * std::cos(xi);
  // Root argument of the eigenvalue formula; its sign separates the
  // oscillatory (coupling-dominated) and overdamped (decay-dominated)
  // regions.
  const double d = wc * wc - 0.25 * g * g;

  QuasienergyPair q;
  const std::complex<double> base(0.0, -0.25 * g);
  if (d >= 0.0) {
    const double root = 0.5 * std::sqrt(d);
    q.gamma_plus = base + root;
    q.gamma_minus = base - root;
  } else {
    const double root = 0.5 * std::sqrt(-d);
    q.gamma_plus = base + std::complex<double>(0.0, root);
    q.gamma_minus = base - std::complex<double>(0.0, root);
  }
  return q;
}

std::pair<double, double> widths(const ModelParams& params, double xi) {
  const double g = params.gamma;
  const double wc = params.rabi * std::cos(xi);
  const double d = 0.25 * g * g - wc * wc;
  const double re_root = d > 0.0 ? std::sqrt(d) : 0.0;
  return {0.5 * g - re_root, 0.5 * g + re_root};
}

std::complex<double> cy_potential(const ModelParams& params, double xi) {
  if (!(params.gamma > 0.0)) throw DomainError("cy_potential needs gamma > 0");
  const double wc = params.rabi * std::cos(xi);
  return {0.0, -wc * wc / (2.0 * params.gamma)};
}

double width_parabolic(const ModelParams& params, double xi) {
  if (!(params.gamma > 0.0)) {
    throw DomainError("width_parabolic needs gamma > 0");
  }
  const double u = xi - 0.5 * kPi;
  return params.rabi * params.rabi / params.gamma * u * u;
}

double omega_eff(const ModelParams& params, double xi) {
  return std::fabs(params.rabi * std::cos(xi));
}

double delta_x(const ModelParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("delta_x needs t > 0");
  if (!(params.rabi > 0.0)) throw DomainError("delta_x needs rabi > 0");
  return std::sqrt(params.gamma / t) / params.rabi;
}

ZoneTable zone_table(const ModelParams& params, const SpatialGrid& grid) {
  ZoneTable z;
  const std::size_t n = grid.xi.size();
  z.xi = grid.xi;
  z.re_gp.resize(n);
  z.im_gp.resize(n);
  z.re_gm.resize(n);
  z.im_gm.resize(n);
  z.width_p.resize(n);
  z.width_m.resize(n);
  z.upper_p.resize(n);
  z.lower_p.resize(n);
  z.upper_m.resize(n);
  z.lower_m.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QuasienergyPair q = gamma_pm(params, grid.xi[i]);
    const auto [wp, wm] = widths(params, grid.xi[i]);
    z.re_gp[i] = q.gamma_plus.real();
    z.im_gp[i] = q.gamma_plus.imag();
    z.re_gm[i] = q.gamma_minus.real();
    z.im_gm[i] = q.gamma_minus.imag();
    z.width_p[i] = wp;
    z.width_m[i] = wm;
    z.upper_p[i] = q.gamma_plus.real() + 0.5 * wp;
    z.lower_p[i] = q.gamma_plus.real() - 0.5 * wp;
    z.upper_m[i] = q.gamma_minus.real() + 0.5 * wm;
    z.lower_m[i] = q.gamma_minus.real() - 0.5 * wm;
  }
  return z;
}

}  // namespace swdecay
