#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "swdecay/adiabatic.hpp"
#include "swdecay/analysis.hpp"
#include "swdecay/csv.hpp"
#include "swdecay/diffraction.hpp"
#include "swdecay/errors.hpp"
#include "swdecay/ladder.hpp"
#include "swdecay/quasienergy.hpp"

namespace swdecay {

namespace {

void require_format(const ScenarioConfig& c, const std::string& expected) {
  if (!c.format.empty() && c.format != expected) {
    throw ConfigError("this command writes " + expected + ", not '" +
                      c.format + "'");
  }
}

// "dir/name.csv" -> "dir/name_n3.csv"; extensionless paths get the suffix
// appended.
std::string per_order_path(const std::string& out, int n) {
  const std::string tag = "_n" + std::to_string(n);
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + tag;
  }
  return out.substr(0, dot) + tag + out.substr(dot);
}

void write_json(const nlohmann::ordered_json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void cmd_zones(const ScenarioConfig& c) {
  require_format(c, "csv");
  c.params.validate();
  const auto grid = SpatialGrid::uniform(static_cast<std::size_t>(
      std::max(c.nxi, 0)));
  const ZoneTable z = zone_table(c.params, grid);

  CsvWriter w({"xi", "re_gp", "im_gp", "re_gm", "im_gm", "width_p", "width_m",
               "upper_p", "lower_p", "upper_m", "lower_m"});
  for (std::size_t i = 0; i < z.xi.size(); ++i) {
    w.add_row({CsvWriter::cell(z.xi[i]), CsvWriter::cell(z.re_gp[i]),
               CsvWriter::cell(z.im_gp[i]), CsvWriter::cell(z.re_gm[i]),
               CsvWriter::cell(z.im_gm[i]), CsvWriter::cell(z.width_p[i]),
               CsvWriter::cell(z.width_m[i]), CsvWriter::cell(z.upper_p[i]),
               CsvWriter::cell(z.lower_p[i]), CsvWriter::cell(z.upper_m[i]),
               CsvWriter::cell(z.lower_m[i])});
  }
  w.write(c.out);
}

void cmd_density(const ScenarioConfig& c) {
  require_format(c, "csv");
  c.params.validate();
  if (!(c.t >= 0.0)) throw ConfigError("density needs t >= 0");
  const auto grid = SpatialGrid::uniform(static_cast<std::size_t>(
      std::max(c.nxi, 0)));
  const FieldProfile f = field_profile(c.params, grid, c.t);

  // Raw amplitudes, their squares, the (1/pi)-normalized densities, and the
  // long-time Gaussian limit (defined only for gamma > 0).
  CsvWriter w({"xi", "re_m", "im_m", "re_e", "im_e", "abs2_m", "abs2_e",
               "density_m", "density_e", "gauss_m", "gauss_e"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < grid.xi.size(); ++i) {
    const double a2m = std::norm(f.phi_m[i]);
    const double a2e = std::norm(f.phi_e[i]);
    double gm = nan, ge = nan;
    if (c.params.gamma > 0.0) {
      std::tie(gm, ge) = gaussian_density(c.params, grid.xi[i], c.t);
    }
    w.add_row({CsvWriter::cell(grid.xi[i]), CsvWriter::cell(f.phi_m[i].real()),
               CsvWriter::cell(f.phi_m[i].imag()),
               CsvWriter::cell(f.phi_e[i].real()),
               CsvWriter::cell(f.phi_e[i].imag()), CsvWriter::cell(a2m),
               CsvWriter::cell(a2e), CsvWriter::cell(a2m / kPi),
               CsvWriter::cell(a2e / kPi), CsvWriter::cell(gm),
               CsvWriter::cell(ge)});
  }
  w.write(c.out);
}

namespace {

std::set<std::string> parse_methods(const std::string& spec) {
  std::set<std::string> want;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    const std::string name =
        b == std::string::npos ? "" : cur.substr(b, e - b + 1);
    cur.clear();
    if (name.empty()) return;
    if (name != "quadrature" && name != "mode_sum" && name != "asymptotic" &&
        name != "two_level") {
      throw ConfigError("unknown totals method '" + name + "'");
    }
    want.insert(name);
  };
  for (const char ch : spec) {
    if (ch == ',') flush();
    else cur.push_back(ch);
  }
  flush();
  if (want.empty()) throw ConfigError("methods selects nothing");
  return want;
}

}  // namespace

void cmd_totals(const ScenarioConfig& c) {
  require_format(c, "csv");
  c.params.validate();
  const std::set<std::string> want = parse_methods(c.methods);
  const auto grid = TimeGrid::uniform(static_cast<std::size_t>(
      std::max(c.nt, 0)), 0.0, c.tmax);

  QuadratureSpec quad;
  quad.abs_tol = c.tol;
  const double tail_tol = std::min(1e-10, c.tol);

  CsvWriter w({"t", "w_m", "w_e", "method"});
  auto add = [&](double t, double wm, double we, const char* method) {
    w.add_row({CsvWriter::cell(t), CsvWriter::cell(wm), CsvWriter::cell(we),
               method});
  };

  if (want.count("quadrature")) {
    for (const double t : grid.t) {
      const auto [wm, we] = total_populations(c.params, t, quad);
      add(t, wm, we, "quadrature");
    }
  }
  if (want.count("mode_sum")) {
    for (const double t : grid.t) {
      const SumTotals s = totals_from_sum(c.params, t, tail_tol);
      add(t, s.w_m, s.w_e, "mode_sum");
    }
  }
  if (want.count("asymptotic") && c.params.gamma > 0.0 &&
      c.params.rabi > 0.0) {
    for (const double t : grid.t) {
      if (t <= 0.0) continue;  // the power laws start after t = 0
      const auto [wm, we] = asymptotic_totals(c.params, t);
      add(t, wm, we, "asymptotic");
    }
  }
  if (want.count("two_level")) {
    for (const double t : grid.t) {
      const auto [wm, we] = two_level_reference(c.params, t);
      add(t, wm, we, "two_level");
    }
  }
  w.write(c.out);
}

void cmd_diffraction(const ScenarioConfig& c) {
  require_format(c, "csv");
  c.params.validate();
  if (c.orders < 1) throw ConfigError("diffraction needs orders >= 1");
  const double quad_tol = std::min(c.tol, 1e-10);

  // Closed-form weight of order n in the channel its parity selects;
  // exactly zero for the forbidden parity.
  auto closed_m = [&](double t, int n) {
    return n % 2 == 0 ? partial_m(c.params, t, std::abs(n) / 2, quad_tol)
                      : 0.0;
  };
  auto closed_e = [&](double t, int n) {
    return n % 2 != 0 ? partial_e(c.params, t, (std::abs(n) - 1) / 2, quad_tol)
                      : 0.0;
  };

  const std::vector<std::string> header = {"t",    "n",    "channel", "re_a",
                                           "im_a", "w",    "w_closed"};

  if (!c.per_order) {
    if (!(c.t >= 0.0)) throw ConfigError("diffraction needs t >= 0");
    const DiffractionSpectrum s = amplitudes(c.params, c.t, c.orders);
    CsvWriter w(header);
    for (int n = -s.n_max; n <= s.n_max; ++n) {
      w.add_row({CsvWriter::cell(s.t), CsvWriter::cell(n), "m",
                 CsvWriter::cell(s.amp_m(n).real()),
                 CsvWriter::cell(s.amp_m(n).imag()),
                 CsvWriter::cell(s.weight_m(n)),
                 CsvWriter::cell(closed_m(s.t, n))});
    }
    for (int n = -s.n_max; n <= s.n_max; ++n) {
      w.add_row({CsvWriter::cell(s.t), CsvWriter::cell(n), "e",
                 CsvWriter::cell(s.amp_e(n).real()),
                 CsvWriter::cell(s.amp_e(n).imag()),
                 CsvWriter::cell(s.weight_e(n)),
                 CsvWriter::cell(closed_e(s.t, n))});
    }
    w.write(c.out);
    return;
  }

  // Per-order time series, one file per order 0..orders.
  if (c.out == "-") {
    throw ConfigError("per-order output needs a file path, not '-'");
  }
  const auto grid = TimeGrid::uniform(static_cast<std::size_t>(
      std::max(c.nt, 0)), 0.0, c.tmax);
  std::vector<CsvWriter> files;
  files.reserve(static_cast<std::size_t>(c.orders) + 1);
  for (int n = 0; n <= c.orders; ++n) files.emplace_back(header);

  for (const double t : grid.t) {
    const DiffractionSpectrum s = amplitudes(c.params, t, c.orders);
    for (int n = 0; n <= c.orders; ++n) {
      const bool even = n % 2 == 0;
      const std::complex<double> a = even ? s.amp_m(n) : s.amp_e(n);
      const double weight = even ? s.weight_m(n) : s.weight_e(n);
      const double closed = even ? closed_m(t, n) : closed_e(t, n);
      files[static_cast<std::size_t>(n)].add_row(
          {CsvWriter::cell(t), CsvWriter::cell(n), even ? "m" : "e",
           CsvWriter::cell(a.real()), CsvWriter::cell(a.imag()),
           CsvWriter::cell(weight), CsvWriter::cell(closed)});
    }
  }
  for (int n = 0; n <= c.orders; ++n) {
    files[static_cast<std::size_t>(n)].write(per_order_path(c.out, n));
  }
}

void cmd_ladder(const ScenarioConfig& c) {
  require_format(c, "csv");
  c.params.validate();
  if (c.trajectory && c.deviation) {
    throw ConfigError("deviation columns apply to the summary output only");
  }
  const auto grid = TimeGrid::uniform(static_cast<std::size_t>(
      std::max(c.nt, 0)), 0.0, c.tmax);

  IntegrateOptions opt;
  opt.rel_tol = c.tol;
  opt.output_times = grid.t;
  // orders can only raise the starting truncation; the leak monitor already
  // forbids anything too narrow.
  const int auto_trunc =
      static_cast<int>(std::ceil(c.params.rabi * c.tmax)) + 16;
  opt.truncation = std::max({1, auto_trunc, c.orders});

  const LadderResult r = integrate(c.params, c.tmax, opt);

  if (c.trajectory) {
    CsvWriter w({"t", "n", "channel", "re", "im"});
    for (const LadderState& s : r.snapshots) {
      for (int n = -s.n_max; n <= s.n_max; ++n) {
        w.add_row({CsvWriter::cell(s.t), CsvWriter::cell(n), "m",
                   CsvWriter::cell(s.am(n).real()),
                   CsvWriter::cell(s.am(n).imag())});
      }
      for (int n = -s.n_max; n <= s.n_max; ++n) {
        w.add_row({CsvWriter::cell(s.t), CsvWriter::cell(n), "e",
                   CsvWriter::cell(s.ae(n).real()),
                   CsvWriter::cell(s.ae(n).imag())});
      }
    }
    w.write(c.out);
    return;
  }

  std::vector<std::string> header = {"t", "w_m", "w_e", "boundary_norm"};
  if (c.deviation) {
    header.push_back("d_m");
    header.push_back("d_e");
  }
  DeviationSeries dev;
  if (c.deviation) dev = adiabaticity_probe(c.params, grid.t, opt);

  CsvWriter w(header);
  for (std::size_t i = 0; i < r.series.t.size(); ++i) {
    std::vector<std::string> row = {
        CsvWriter::cell(r.series.t[i]), CsvWriter::cell(r.series.w_m[i]),
        CsvWriter::cell(r.series.w_e[i]), CsvWriter::cell(r.boundary_norm[i])};
    if (c.deviation) {
      row.push_back(CsvWriter::cell(dev.d_m[i]));
      row.push_back(CsvWriter::cell(dev.d_e[i]));
    }
    w.add_row(row);
  }
  w.write(c.out);
}

namespace {

PopulationSeries fit_series_from_file(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int ct = table.column("t");
  const int cm = table.column("w_m");
  const int ce = table.column("w_e");
  if (ct < 0 || cm < 0 || ce < 0) {
    throw ConfigError("input file needs t, w_m, w_e columns: " + path);
  }
  const int cmethod = table.column("method");

  // A stacked multi-method file contributes only its quadrature block.
  bool restrict = false;
  if (cmethod >= 0) {
    for (const auto& row : table.rows) {
      if (row[static_cast<std::size_t>(cmethod)] == "quadrature") {
        restrict = true;
        break;
      }
    }
  }

  PopulationSeries s;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (restrict &&
        table.rows[i][static_cast<std::size_t>(cmethod)] != "quadrature") {
      continue;
    }
    s.t.push_back(table.number(i, ct));
    s.w_m.push_back(table.number(i, cm));
    s.w_e.push_back(table.number(i, ce));
  }
  return s;
}

nlohmann::ordered_json fit_report(const PowerLawFit& fit, const char* channel,
                                  double expected_exponent,
                                  double expected_prefactor) {
  nlohmann::ordered_json j;
  j["channel"] = channel;
  j["exponent"] = fit.exponent;
  j["prefactor"] = fit.prefactor;
  j["residual"] = fit.rms_residual;
  j["window"] = {fit.window_lo, fit.window_hi};
  j["expected_exponent"] = expected_exponent;
  if (expected_prefactor > 0.0) {
    j["expected_prefactor"] = expected_prefactor;
  } else {
    j["expected_prefactor"] = nullptr;
  }
  return j;
}

}  // namespace

void cmd_fit(const ScenarioConfig& c) {
  require_format(c, "json");
  c.params.validate();

  PopulationSeries series;
  const bool generated = c.input.empty();
  if (generated) {
    if (!(c.window_lo > 0.0) || !(c.window_hi > c.window_lo)) {
      throw ConfigError("fit needs 0 < window_lo < window_hi");
    }
    if (c.nt < 8) throw ConfigError("fit needs nt >= 8");
    QuadratureSpec quad;
    quad.abs_tol = c.fit_tol;
    const double ratio = c.window_hi / c.window_lo;
    const int count = c.nt;
    for (int i = 0; i < count; ++i) {
      double t = c.window_lo *
                 std::pow(ratio, static_cast<double>(i) /
                                     static_cast<double>(count - 1));
      if (i == 0) t = c.window_lo;
      if (i == count - 1) t = c.window_hi;
      series.t.push_back(t);
      const auto [wm, we] = total_populations(c.params, t, quad);
      series.w_m.push_back(wm);
      series.w_e.push_back(we);
    }
  } else {
    series = fit_series_from_file(c.input);
  }

  const PowerLawFit fm =
      fit_power_law(series, Channel::m, c.window_lo, c.window_hi);
  const PowerLawFit fe =
      fit_power_law(series, Channel::e, c.window_lo, c.window_hi);

  // Long-time laws w_m = sqrt(g)/(|Omega| sqrt(pi t)),
  // w_e = 1/(2 |Omega| sqrt(pi g) t^{3/2}); prefactors undefined without
  // decay or coupling.
  double pref_m = 0.0, pref_e = 0.0;
  if (c.params.gamma > 0.0 && c.params.rabi > 0.0) {
    pref_m = std::sqrt(c.params.gamma) / (c.params.rabi * std::sqrt(kPi));
    pref_e = 1.0 / (2.0 * c.params.rabi * std::sqrt(kPi * c.params.gamma));
  }

  nlohmann::ordered_json report;
  report["fits"] = nlohmann::ordered_json::array(
      {fit_report(fm, "m", -0.5, pref_m), fit_report(fe, "e", -1.5, pref_e)});

  if (generated) {
    QuadratureSpec quad;
    quad.abs_tol = c.tol;
    const auto grid = TimeGrid::uniform(1401, 0.0, 7.0);
    std::vector<double> sw, ref;
    sw.reserve(grid.t.size());
    ref.reserve(grid.t.size());
    for (const double t : grid.t) {
      sw.push_back(total_populations(c.params, t, quad).first);
      ref.push_back(two_level_reference(c.params, t).first);
    }
    nlohmann::ordered_json sup;
    sup["windows"] = {{1.0, 3.0}, {3.0, 5.0}, {5.0, 7.0}};
    nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] :
         std::vector<std::pair<double, double>>{{1, 3}, {3, 5}, {5, 7}}) {
      ratios.push_back(suppression_ratio(grid.t, sw, ref, lo, hi));
    }
    sup["ratios"] = ratios;
    report["suppression"] = sup;
  } else {
    report["suppression"] = nullptr;
  }

  write_json(report, c.out);
}

}  // namespace swdecay
