#pragma once

#include "scenario.hpp"

namespace swdecay {

// Each command writes config.out (CSV unless noted; "-" is stdout) and
// throws on failure; the caller maps exception types to exit codes.

// Quasienergy zone table over the spatial grid.
void cmd_zones(const ScenarioConfig& config);

// Wavefunction snapshot at config.t with raw, normalized, and Gaussian-limit
// density columns.
void cmd_density(const ScenarioConfig& config);

// Total-population time series, one block per method: quadrature, mode_sum,
// asymptotic (t > 0 only, needs gamma > 0), two_level.
void cmd_totals(const ScenarioConfig& config);

// Diffraction spectrum at config.t, or per-order time-series files when
// per_order is set (one file per order, "_n<k>" inserted before the
// extension).
void cmd_diffraction(const ScenarioConfig& config);

// Mode-ladder integration: summary series, optionally with the
// full-vs-adiabatic deviation columns, or the full trajectory.
void cmd_ladder(const ScenarioConfig& config);

// Power-law tail fits plus suppression ratios, as a JSON report. Reads
// config.input when given, otherwise generates the series.
void cmd_fit(const ScenarioConfig& config);

}  // namespace swdecay
