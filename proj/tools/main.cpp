#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "scenario.hpp"
#include "swdecay/errors.hpp"

namespace {

using swdecay::ScenarioConfig;

// Option values parsed from one subcommand, plus which flags were actually
// given so that flag > config file > preset > default resolves per key.
struct FlagSet {
  ScenarioConfig flags;
  std::string preset;
  std::string config_path;
  std::vector<std::pair<std::string, CLI::Option*>> tracked;
};

void add_common_options(CLI::App* sub, FlagSet& fs) {
  auto track = [&](CLI::Option* opt, const char* key) {
    fs.tracked.emplace_back(key, opt);
  };
  sub->add_option("--preset", fs.preset,
                  "parameter preset: fig2a, fig2b, fig3, fig4, fig5");
  sub->add_option("--config", fs.config_path,
                  "key=value file; flags given here still win");

  track(sub->add_option("--rabi", fs.flags.params.rabi,
                        "|Omega| in units of gamma"), "rabi");
  track(sub->add_option("--rabi_phase", fs.flags.params.rabi_phase,
                        "arg(Omega) in radians"), "rabi_phase");
  track(sub->add_option("--gamma", fs.flags.params.gamma,
                        "excited-level width (unit scale)"), "gamma");
  track(sub->add_option("--recoil", fs.flags.params.recoil,
                        "recoil frequency omega_r"), "recoil");
  track(sub->add_option("--detuning", fs.flags.params.detuning,
                        "Doppler detuning delta"), "detuning");
  track(sub->add_option("--tmax", fs.flags.tmax, "time-series horizon"),
        "tmax");
  track(sub->add_option("--nt", fs.flags.nt, "time-series points"), "nt");
  track(sub->add_option("--nxi", fs.flags.nxi, "spatial grid points"), "nxi");
  track(sub->add_option("--t", fs.flags.t, "snapshot time"), "t");
  track(sub->add_option("--orders", fs.flags.orders,
                        "diffraction-order / truncation extent"), "orders");
  track(sub->add_option("--tol", fs.flags.tol,
                        "quadrature / integrator tolerance"), "tol");
  track(sub->add_option("--fit_tol", fs.flags.fit_tol,
                        "quadrature tolerance for the tail-fit series"),
        "fit_tol");
  track(sub->add_option("--window_lo", fs.flags.window_lo,
                        "fit window start"), "window_lo");
  track(sub->add_option("--window_hi", fs.flags.window_hi, "fit window end"),
        "window_hi");
  track(sub->add_flag("--per_order", fs.flags.per_order,
                      "diffraction: one time-series file per order"),
        "per_order");
  track(sub->add_flag("--trajectory", fs.flags.trajectory,
                      "ladder: per-order amplitudes instead of summary"),
        "trajectory");
  track(sub->add_flag("--deviation", fs.flags.deviation,
                      "ladder: append full-vs-adiabatic deviation columns"),
        "deviation");
  track(sub->add_option("--methods", fs.flags.methods,
                        "totals: comma-separated subset of quadrature,"
                        "mode_sum,asymptotic,two_level"),
        "methods");
  track(sub->add_option("--input", fs.flags.input,
                        "fit: ingest this CSV instead of generating"),
        "input");
  track(sub->add_option("--out", fs.flags.out, "output path ('-' = stdout)"),
        "out");
  track(sub->add_option("--format", fs.flags.format,
                        "csv for series/profiles, json for fit reports"),
        "format");
}

void copy_field(const std::string& key, const ScenarioConfig& from,
                ScenarioConfig& to) {
  if (key == "rabi") to.params.rabi = from.params.rabi;
  else if (key == "rabi_phase") to.params.rabi_phase = from.params.rabi_phase;
  else if (key == "gamma") to.params.gamma = from.params.gamma;
  else if (key == "recoil") to.params.recoil = from.params.recoil;
  else if (key == "detuning") to.params.detuning = from.params.detuning;
  else if (key == "tmax") to.tmax = from.tmax;
  else if (key == "nt") to.nt = from.nt;
  else if (key == "nxi") to.nxi = from.nxi;
  else if (key == "t") to.t = from.t;
  else if (key == "orders") to.orders = from.orders;
  else if (key == "tol") to.tol = from.tol;
  else if (key == "fit_tol") to.fit_tol = from.fit_tol;
  else if (key == "window_lo") to.window_lo = from.window_lo;
  else if (key == "window_hi") to.window_hi = from.window_hi;
  else if (key == "per_order") to.per_order = from.per_order;
  else if (key == "trajectory") to.trajectory = from.trajectory;
  else if (key == "deviation") to.deviation = from.deviation;
  else if (key == "methods") to.methods = from.methods;
  else if (key == "input") to.input = from.input;
  else if (key == "out") to.out = from.out;
  else if (key == "format") to.format = from.format;
}

ScenarioConfig resolve(const FlagSet& fs) {
  ScenarioConfig c;
  if (!fs.preset.empty()) swdecay::apply_preset(fs.preset, c);
  if (!fs.config_path.empty()) swdecay::load_config_file(fs.config_path, c);
  for (const auto& [key, opt] : fs.tracked) {
    if (opt->count() > 0) copy_field(key, fs.flags, c);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deflection of a decaying two-level atom by a resonant "
               "standing wave: zone tables, densities, populations, "
               "diffraction spectra, ladder integrations, and tail fits."};
  app.require_subcommand(1);
  app.footer("exit codes: 0 ok, 2 usage, 3 convergence failure, 4 i/o");

  const std::map<std::string, std::pair<const char*,
      std::function<void(const ScenarioConfig&)>>> commands = {
      {"zones", {"quasienergy zone table over the standing-wave period",
                 swdecay::cmd_zones}},
      {"density", {"wavefunction snapshot with exact and Gaussian densities",
                   swdecay::cmd_density}},
      {"totals", {"total-population series by every method",
                  swdecay::cmd_totals}},
      {"diffraction", {"order-resolved spectrum or per-order series",
                       swdecay::cmd_diffraction}},
      {"ladder", {"mode-ladder integration with recoil and detuning",
                  swdecay::cmd_ladder}},
      {"fit", {"power-law tail fits and suppression ratios (JSON)",
               swdecay::cmd_fit}},
  };

  std::map<std::string, FlagSet> flag_sets;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, cmd.first);
    add_common_options(sub, flag_sets[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    commands.at(name).second(resolve(flag_sets.at(name)));
    return 0;
  } catch (const swdecay::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const swdecay::QuadratureNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swdecay::GridNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swdecay::TailNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swdecay::StepSizeUnderflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swdecay::TruncationExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swdecay::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
