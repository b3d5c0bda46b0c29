#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "swdecay/errors.hpp"

namespace swdecay {

struct AdaptiveOptions {
  double abs_tol = 1e-8;
  int max_depth = 20;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss, positive half of [-1, 1].
// Even indices are the embedded Gauss nodes.
inline constexpr std::array<double, 8> kK15Nodes = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};

inline constexpr std::array<double, 8> kK15Weights = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};

inline constexpr std::array<double, 4> kG7Weights = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

// One Gauss-Kronrod panel over [a, b]: returns the K15 value and the
// QUADPACK-style error estimate (200 |K15 - G7|)^{3/2}.
template <class F>
std::pair<double, double> gauss_kronrod_panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const double fc = f(c);
  double kronrod = kK15Weights[0] * fc;
  double gauss = kG7Weights[0] * fc;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kK15Nodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    kronrod += kK15Weights[i] * fsum;
    if (i % 2 == 0) gauss += kG7Weights[i / 2] * fsum;
  }
  kronrod *= h;
  gauss *= h;

  const double diff = std::fabs(kronrod - gauss);
  const double err = std::pow(200.0 * diff, 1.5);
  return {kronrod, err};
}

template <class F>
double integrate_recurse(F&& f, double a, double b, double tol, int depth,
                         int max_depth) {
  auto [value, err] = gauss_kronrod_panel(f, a, b);
  if (err <= tol) return value;
  if (depth >= max_depth) {
    throw QuadratureNotConverged(
        "adaptive quadrature: depth limit reached before tolerance");
  }
  const double c = 0.5 * (a + b);
  return integrate_recurse(f, a, c, 0.5 * tol, depth + 1, max_depth) +
         integrate_recurse(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive bisection with a G7K15 panel rule; absolute-tolerance budget is
// halved on each split. Throws QuadratureNotConverged at the depth limit.
template <class F>
double integrate_adaptive(F&& f, double a, double b,
                          const AdaptiveOptions& opt = {}) {
  if (a == b) return 0.0;
  return detail::integrate_recurse(f, a, b, opt.abs_tol, 0, opt.max_depth);
}

}  // namespace swdecay
