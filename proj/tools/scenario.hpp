#pragma once

#include <map>
#include <string>

#include "swdecay/model.hpp"

namespace swdecay {

// Everything a command run needs, resolvable from defaults, a preset, a
// key=value config file, and command-line flags (later sources win, in that
// order). Emits to and parses from the flat config format losslessly.
struct ScenarioConfig {
  ModelParams params;

  double tmax = 6.0;       // time-series horizon
  int nt = 241;            // time-series points
  int nxi = 361;           // spatial grid points
  double t = 2.0;          // snapshot time (density, diffraction spectrum)
  int orders = 8;          // diffraction / ladder order extent
  double tol = 1e-8;       // quadrature / integrator tolerance
  double fit_tol = 1e-13;  // quadrature tolerance for the tail-fit series
  double window_lo = 50.0; // fit window
  double window_hi = 400.0;

  bool per_order = false;  // diffraction: one time-series file per order
  bool trajectory = false; // ladder: per-order amplitudes instead of summary
  bool deviation = false;  // ladder: append full-vs-adiabatic distance

  // totals: comma-separated subset of the four series methods; blocks are
  // always emitted in this canonical order.
  std::string methods = "quadrature,mode_sum,asymptotic,two_level";
  std::string input;       // fit: ingest this CSV instead of generating
  std::string out = "-";
  std::string format;      // empty: command default (csv, or json for fit)

  bool operator==(const ScenarioConfig& other) const;
};

// Serializes every key, one per line, in a fixed order.
std::string emit_config(const ScenarioConfig& config);

// Parses the emit_config format: key=value lines, blank lines and
// #-comments ignored. Unknown and repeated keys are ConfigError.
std::map<std::string, std::string> read_config_text(const std::string& text);

// Applies parsed key=value pairs onto config. Malformed values are
// ConfigError.
void apply_config(const std::map<std::string, std::string>& kv,
                  ScenarioConfig& config);

// parse(emit(config)) == config.
ScenarioConfig parse_config(const std::string& text);

// Loads and applies a config file; IoError if unreadable.
void load_config_file(const std::string& path, ScenarioConfig& config);

// Figure presets: fig2a, fig2b (zone tables at weak/strong coupling),
// fig3 (density snapshot), fig4 (per-order series), fig5 (total series).
// Unknown names are ConfigError.
void apply_preset(const std::string& name, ScenarioConfig& config);

}  // namespace swdecay
