#include <cmath>
#include <complex>

#include "doctest.h"
#include "swdecay/adiabatic.hpp"
#include "swdecay/diffraction.hpp"
#include "swdecay/errors.hpp"
#include "swdecay/ladder.hpp"

using namespace swdecay;
using std::complex;

namespace {
ModelParams make(double rabi, double gamma = 1.0) {
  ModelParams p;
  p.rabi = rabi;
  p.gamma = gamma;
  return p;
}
}  // namespace

TEST_CASE("right side at the one-beam initial condition") {
  const auto p = make(2.0);
  const auto s = LadderState::initial(4);
  const auto d = rhs_full(p, s);
  // Only the e-channel neighbors of n = 0 move: da_{+-1}^e = i Omega*/4.
  const complex<double> expect(0.0, 0.5);
  CHECK(std::abs(d.da_e[s.index(1)] - expect) < 1e-15);
  CHECK(std::abs(d.da_e[s.index(-1)] - expect) < 1e-15);
  for (int n = -4; n <= 4; ++n) {
    CHECK(std::abs(d.da_m[s.index(n)]) == 0.0);
    if (std::abs(n) != 1) CHECK(std::abs(d.da_e[s.index(n)]) == 0.0);
  }
  CHECK(d.d_decay == 0.0);
}

TEST_CASE("norm flux identity at a random state") {
  auto p = make(1.7);
  p.recoil = 0.02;
  p.detuning = 0.3;
  p.rabi_phase = 1.1;
  LadderState s = LadderState::initial(3);
  // Scatter some amplitude around by hand.
  s.a_m[s.index(-2)] = {0.3, -0.1};
  s.a_m[s.index(1)] = {-0.2, 0.4};
  s.a_e[s.index(0)] = {0.1, 0.25};
  s.a_e[s.index(3)] = {-0.15, 0.0};

  const auto d = rhs_full(p, s);
  // d/dt sum(|a|^2) = 2 Re sum(a* da) must equal -gamma sum |a_e|^2.
  double flux = 0.0, we = 0.0;
  for (std::size_t i = 0; i < s.a_m.size(); ++i) {
    flux += 2.0 * (std::conj(s.a_m[i]) * d.da_m[i]).real();
    flux += 2.0 * (std::conj(s.a_e[i]) * d.da_e[i]).real();
    we += std::norm(s.a_e[i]);
  }
  CHECK(flux == doctest::Approx(-p.gamma * we).epsilon(1e-12));
  CHECK(d.d_decay == doctest::Approx(we).epsilon(1e-14));
}

TEST_CASE("isolated order rotates at its kinetic rate") {
  // Omega = 0 decouples the ladder; a_n^m picks up phase n^2 w_r + n d.
  auto p = make(0.0);
  p.recoil = 0.05;
  p.detuning = 0.4;
  LadderState s = LadderState::initial(2);
  s.a_m[s.index(0)] = 0.0;
  s.a_m[s.index(2)] = 1.0;
  const auto d = rhs_full(p, s);
  const double rate = 4.0 * 0.05 + 2.0 * 0.4;
  CHECK(std::abs(d.da_m[s.index(2)] - complex<double>(0.0, -rate)) < 1e-15);
}

TEST_CASE("no drive means no evolution") {
  const auto r = integrate(make(0.0), 5.0);
  CHECK(std::abs(r.final_state.am(0) - 1.0) < 1e-12);
  CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.series.w_m.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mirror symmetry holds without detuning") {
  const auto r = integrate(make(3.0), 2.0);
  const auto& f = r.final_state;
  for (int n = 1; n <= f.n_max; ++n) {
    CHECK(std::abs(f.am(n) - f.am(-n)) < 1e-9);
    CHECK(std::abs(f.ae(n) - f.ae(-n)) < 1e-9);
  }
}

TEST_CASE("unitary ladder conserves norm") {
  const auto p = make(5.0, 0.0);
  const auto r = integrate(p, 8.0);  // |Omega| t = 40
  CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-9));
  for (double w : r.boundary_norm) CHECK(w < 1e-9);
}

TEST_CASE("norm decrease is accounted by the decay integral") {
  const auto p = make(5.0);
  const auto r = integrate(p, 4.0);
  REQUIRE(!r.snapshots.empty());
  double prev_norm = 1.0 + 1e-15;
  for (const auto& s : r.snapshots) {
    const double n = s.norm();
    CHECK(n <= prev_norm + 1e-12);  // monotone loss
    CHECK(n + p.gamma * s.decay_integral ==
          doctest::Approx(1.0).epsilon(1e-8));
    prev_norm = n;
  }
}

TEST_CASE("ladder totals match the analytic populations without recoil") {
  const auto p = make(5.0);
  IntegrateOptions opt;
  opt.rel_tol = 1e-10;
  const auto r = integrate(p, 6.0, opt);
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  for (std::size_t i = 0; i < r.series.t.size(); i += 40) {
    const auto [qm, qe] = total_populations(p, r.series.t[i], spec);
    CHECK(std::fabs(r.series.w_m[i] - qm) < 1e-6);
    CHECK(std::fabs(r.series.w_e[i] - qe) < 1e-6);
  }
}

TEST_CASE("per-order ladder amplitudes match the closed-form weights") {
  const auto p = make(3.0);
  IntegrateOptions opt;
  opt.output_times = {2.0};
  const auto r = integrate(p, 2.0, opt);
  const auto& f = r.snapshots.back();
  for (int n = 0; n <= 2; ++n) {
    CHECK(std::fabs(std::norm(f.am(2 * n)) - partial_m(p, 2.0, n)) < 1e-7);
  }
  for (int n = 0; n <= 1; ++n) {
    CHECK(std::fabs(std::norm(f.ae(2 * n + 1)) - partial_e(p, 2.0, n)) <
          1e-7);
  }
  // Even e-orders and odd m-orders stay empty.
  CHECK(std::abs(f.ae(0)) < 1e-10);
  CHECK(std::abs(f.ae(2)) < 1e-10);
  CHECK(std::abs(f.am(1)) < 1e-10);
}

TEST_CASE("embedded error estimate gives fifth-order steps") {
  // Fixed-step runs at h and h/2 against a tight reference; the end-state
  // error must shrink by about 2^5.
  const auto p = make(2.0);
  IntegrateOptions tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-16;
  tight.truncation = 24;
  tight.output_times = {1.0};
  const auto ref = integrate(p, 1.0, tight);

  auto run = [&](double h) {
    IntegrateOptions o;
    o.fixed_step = h;
    o.truncation = 24;
    o.output_times = {1.0};
    const auto r = integrate(p, 1.0, o);
    double err = 0.0;
    const auto& a = r.final_state;
    const auto& b = ref.final_state;
    for (std::size_t i = 0; i < a.a_m.size(); ++i) {
      err = std::max(err, std::abs(a.a_m[i] - b.a_m[i]));
      err = std::max(err, std::abs(a.a_e[i] - b.a_e[i]));
    }
    return err;
  };

  const double e1 = run(0.05);
  const double e2 = run(0.025);
  const double order = std::log2(e1 / e2);
  CHECK(order > 4.2);
  CHECK(order < 5.8);
}

TEST_CASE("truncation restarts keep the boundary clean") {
  // Force a start far too narrow; the integrator must widen it instead of
  // silently clipping the ladder.
  const auto p = make(5.0, 0.0);
  IntegrateOptions opt;
  opt.truncation = 4;
  const auto r = integrate(p, 3.0, opt);
  CHECK(r.truncation_used > 4);
  CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-8));

  IntegrateOptions capped = opt;
  capped.max_truncation = 6;
  CHECK_THROWS_AS(integrate(p, 3.0, capped), TruncationExceeded);
}

TEST_CASE("deviation from the adiabatic limit grows with recoil") {
  auto p = make(5.0);
  p.recoil = 1e-2;
  const std::vector<double> times{0.5, 1.0, 2.0, 4.0};
  const auto d = adiabaticity_probe(p, times);
  REQUIRE(d.d_m.size() == times.size());
  CHECK(d.d_m.back() > d.d_m.front());

  p.recoil = 0.0;
  const auto z = adiabaticity_probe(p, times);
  for (double v : z.d_m) CHECK(v == 0.0);
}

TEST_CASE("ladder argument validation") {
  CHECK_THROWS_AS(integrate(make(2.0), -1.0), DomainError);
  IntegrateOptions opt;
  opt.output_times = {0.5, 0.25};  // not increasing
  CHECK_THROWS_AS(integrate(make(2.0), 1.0, opt), DomainError);
}
