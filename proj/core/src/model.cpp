#include "swdecay/model.hpp"

#include <cmath>

#include "swdecay/errors.hpp"

namespace swdecay {

void ModelParams::validate() const {
  if (!(rabi >= 0.0)) throw DomainError("rabi must be >= 0");
  // gamma = 0 is the unitary limit; only operations whose formulas carry a
  // 1/gamma reject it individually.
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  if (!(recoil >= 0.0)) throw DomainError("recoil must be >= 0");
  if (!std::isfinite(rabi_phase) || !std::isfinite(detuning)) {
    throw DomainError("rabi_phase and detuning must be finite");
  }
}

SpatialGrid SpatialGrid::uniform(std::size_t count, double lo, double hi) {
  if (count < 3) throw DomainError("spatial grid needs at least 3 points");
  if (!(hi > lo)) throw DomainError("spatial grid needs hi > lo");
  SpatialGrid g;
  g.xi.resize(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g.xi[i] = lo + h * static_cast<double>(i);
  }
  g.xi.back() = hi;
  return g;
}

TimeGrid TimeGrid::uniform(std::size_t count, double t0, double t1) {
  if (count < 1) throw DomainError("time grid needs at least 1 point");
  if (!(t0 >= 0.0)) throw DomainError("time grid starts at t >= 0");
  if (count > 1 && !(t1 > t0)) throw DomainError("time grid needs t1 > t0");
  TimeGrid g;
  g.t.resize(count);
  if (count == 1) {
    g.t[0] = t0;
    return g;
  }
  const double h = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g.t[i] = t0 + h * static_cast<double>(i);
  }
  g.t.back() = t1;
  return g;
}

RegimeReport validate_regime(const ModelParams& params, double t, double v0x,
                             double margin) {
  params.validate();
  if (!(params.gamma > 0.0)) {
    throw DomainError("regime diagnostics need gamma > 0");
  }
  if (!(t >= 0.0)) throw DomainError("validate_regime needs t >= 0");
  if (!(margin > 1.0)) throw DomainError("validate_regime needs margin > 1");

  RegimeReport r;
  const double w = params.rabi;
  const double g = params.gamma;

  r.narrow_zone_ratio = w * w * t / g;
  r.narrow_zone = r.narrow_zone_ratio >= margin;

  r.strong_coupling_ratio = w / g;
  r.strong_coupling = r.strong_coupling_ratio >= margin;

  r.adiabaticity_evaluable = params.recoil > 0.0;
  if (r.adiabaticity_evaluable) {
    const double bound = std::sqrt(g / params.recoil);
    r.adiabaticity_ratio = w * t / bound;
    r.adiabatic = w * t <= bound / margin;
  }

  // k|v0x| t measured against the shrinking node width (1/|Omega|)sqrt(g/t).
  r.transverse_drift_ratio =
      t > 0.0 ? std::fabs(v0x) * t * w * std::sqrt(t / g) : 0.0;
  r.transverse_ok = r.transverse_drift_ratio <= 1.0 / margin;

  return r;
}

}  // namespace swdecay
