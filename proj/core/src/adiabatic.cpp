#include "swdecay/adiabatic.hpp"

#include <cmath>
#include <vector>

#include "swdecay/errors.hpp"
#include "swdecay/quadrature.hpp"
#include "swdecay/quasienergy.hpp"

namespace swdecay {

namespace {

struct Envelope {
  double c;  // e^{-g t/4} cos(s t)
  double q;  // e^{-g t/4} sin(s t)/s
};

// Both factors are entire in s^2 = (|Omega cos xi|^2 - g^2/4)/4, so the
// branch point s = 0 is ordinary: series inside |st|^2 < 1e-6, circular
// functions on the oscillatory side, fused exponentials on the overdamped
// side (there sqrt(-s2) <= g/4, so every exponent is <= 0 and nothing
// overflows however large g*t gets).
Envelope envelope(double s2, double g, double t) {
  const double w = s2 * t * t;  // (s t)^2 with the branch sign
  if (std::fabs(w) < 1e-6) {
    const double c0 = 1.0 + w * (-0.5 + w * (1.0 / 24.0 - w / 720.0));
    const double q0 =
        1.0 + w * (-1.0 / 6.0 + w * (1.0 / 120.0 - w / 5040.0));
    const double damp = std::exp(-0.25 * g * t);
    return {damp * c0, damp * t * q0};
  }
  if (s2 > 0.0) {
    const double s = std::sqrt(s2);
    const double damp = std::exp(-0.25 * g * t);
    return {damp * std::cos(s * t), damp * std::sin(s * t) / s};
  }
  const double sg = std::sqrt(-s2);
  const double ep = std::exp((sg - 0.25 * g) * t);
  const double em = std::exp(-(sg + 0.25 * g) * t);
  return {0.5 * (ep + em), 0.5 * (ep - em) / sg};
}

double sqr(double x) { return x * x; }

}  // namespace

BranchCoefficients coefficients(const ModelParams& params, double xi,
                                double eps_branch) {
  params.validate();
  const double g = params.gamma;
  const double wc2 = 2.0 * params.rabi * std::fabs(std::cos(xi));
  // In the unitary limit the degeneracy sits at the node itself; fall back
  // to the coupling strength as the scale of "too close".
  const double scale = g > 0.0 ? g : params.rabi;
  if (std::fabs(wc2 - g) <= eps_branch * scale) {
    throw BranchDegenerate(
        "branch decomposition degenerate near 2|Omega cos xi| = gamma");
  }

  const std::complex<double> oc = std::conj(params.omega()) * std::cos(xi);
  const double d = sqr(params.rabi * std::cos(xi)) - 0.25 * g * g;
  // R = sqrt(4 d) on the same principal branch as the eigenvalues, so the
  // sum rules close exactly: gamma_plus - gamma_minus = R/2.
  const std::complex<double> r =
      d >= 0.0 ? std::complex<double>(2.0 * std::sqrt(d), 0.0)
               : std::complex<double>(0.0, 2.0 * std::sqrt(-d));

  const QuasienergyPair q = gamma_pm(params, xi);
  BranchCoefficients b;
  b.a_m_plus = -2.0 * q.gamma_minus / r;
  b.a_m_minus = 2.0 * q.gamma_plus / r;
  b.a_e_plus = -oc / r;
  b.a_e_minus = oc / r;
  return b;
}

WavePair wavefunctions(const ModelParams& params, double xi, double t) {
  if (!(t >= 0.0)) throw DomainError("wavefunctions need t >= 0");
  const double g = params.gamma;
  const double c = std::cos(xi);
  const double wc = params.rabi * c;
  const double s2 = 0.25 * (wc * wc - 0.25 * g * g);
  const Envelope env = envelope(s2, g, t);

  WavePair out;
  out.phi_m = env.c + 0.25 * g * env.q;
  out.phi_e = std::complex<double>(0.0, 1.0) *
              (0.5 * c * std::conj(params.omega())) * env.q;
  return out;
}

std::pair<double, double> density(const ModelParams& params, double xi,
                                  double t) {
  const WavePair w = wavefunctions(params, xi, t);
  return {std::norm(w.phi_m) / kPi, std::norm(w.phi_e) / kPi};
}

std::pair<double, double> gaussian_density(const ModelParams& params,
                                           double xi, double t) {
  if (!(t >= 0.0)) throw DomainError("gaussian_density needs t >= 0");
  if (!(params.gamma > 0.0)) {
    throw DomainError("gaussian_density needs gamma > 0");
  }
  const double g = params.gamma;
  const double u = xi - 0.5 * kPi;
  const double w2 = params.rabi * params.rabi;
  const double envelope_m = std::exp(-(w2 * t / g) * u * u);
  return {envelope_m / kPi, (w2 / (g * g)) * u * u * envelope_m / kPi};
}

std::pair<double, double> total_populations(const ModelParams& params,
                                            double t,
                                            const QuadratureSpec& quad) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("total_populations need t >= 0");
  if (t == 0.0) return {1.0, 0.0};

  // Integrate [0, pi/2] and double: the densities depend on cos^2(xi).
  // A cut at the degeneracy 2|Omega cos xi| = gamma keeps each panel on
  // one side of the oscillatory/overdamped crossover.
  std::vector<double> cuts{0.0};
  if (2.0 * params.rabi > params.gamma) {
    cuts.push_back(std::acos(params.gamma / (2.0 * params.rabi)));
  }
  cuts.push_back(0.5 * kPi);

  AdaptiveOptions opt;
  opt.max_depth = quad.max_depth;
  // Tolerance on the returned populations; the raw integral gets pi/2 of
  // it, split evenly across segments and channels.
  opt.abs_tol = quad.abs_tol * (0.5 * kPi) /
                static_cast<double>(cuts.size() - 1);

  double sum_m = 0.0;
  double sum_e = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    sum_m += integrate_adaptive(
        [&](double xi) {
          return std::norm(wavefunctions(params, xi, t).phi_m);
        },
        cuts[k], cuts[k + 1], opt);
    sum_e += integrate_adaptive(
        [&](double xi) {
          return std::norm(wavefunctions(params, xi, t).phi_e);
        },
        cuts[k], cuts[k + 1], opt);
  }
  return {2.0 / kPi * sum_m, 2.0 / kPi * sum_e};
}

std::pair<double, double> asymptotic_totals(const ModelParams& params,
                                            double t) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("asymptotic_totals need t > 0");
  if (!(params.rabi > 0.0)) {
    throw DomainError("asymptotic_totals need rabi > 0");
  }
  if (!(params.gamma > 0.0)) {
    throw DomainError("asymptotic_totals need gamma > 0");
  }
  const double g = params.gamma;
  const double w_m = std::sqrt(g) / (params.rabi * std::sqrt(kPi * t));
  const double w_e =
      1.0 / (2.0 * params.rabi * std::sqrt(kPi * g) * t * std::sqrt(t));
  return {w_m, w_e};
}

std::pair<double, double> two_level_reference(const ModelParams& params,
                                              double t) {
  const WavePair w = wavefunctions(params, 0.0, t);
  return {std::norm(w.phi_m), std::norm(w.phi_e)};
}

FieldProfile field_profile(const ModelParams& params, const SpatialGrid& grid,
                           double t) {
  FieldProfile f;
  f.grid = grid;
  f.t = t;
  f.phi_m.reserve(grid.xi.size());
  f.phi_e.reserve(grid.xi.size());
  for (const double xi : grid.xi) {
    const WavePair w = wavefunctions(params, xi, t);
    f.phi_m.push_back(w.phi_m);
    f.phi_e.push_back(w.phi_e);
  }
  return f;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::quadrature: return "quadrature";
    case Method::mode_sum: return "mode_sum";
    case Method::ladder: return "ladder";
    case Method::asymptotic: return "asymptotic";
    case Method::gaussian: return "gaussian";
    case Method::two_level: return "two_level";
  }
  throw DomainError("unknown method tag");
}

Method method_from_string(const std::string& s) {
  if (s == "quadrature") return Method::quadrature;
  if (s == "mode_sum") return Method::mode_sum;
  if (s == "ladder") return Method::ladder;
  if (s == "asymptotic") return Method::asymptotic;
  if (s == "gaussian") return Method::gaussian;
  if (s == "two_level") return Method::two_level;
  throw ConfigError("unknown method: " + s);
}

}  // namespace swdecay
