#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "commands.hpp"
#include "scenario.hpp"
#include "swdecay/adiabatic.hpp"
#include "swdecay/csv.hpp"
#include "swdecay/errors.hpp"

using namespace swdecay;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* b = std::getenv("SWDECAY_BIN");
  REQUIRE_MESSAGE(b != nullptr, "SWDECAY_BIN must point at the tool");
  return b;
}

// Runs the tool with the given arguments; returns the exit code.
int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + p.string()));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Fresh working directory per test case.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("swdecay_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("config round-trips losslessly") {
  ScenarioConfig c;
  CHECK(parse_config(emit_config(c)) == c);

  // Every field moved off its default.
  c.params.rabi = 3.25;
  c.params.rabi_phase = -0.125;
  c.params.gamma = 2.0;
  c.params.recoil = 1e-3;
  c.params.detuning = 0.2;
  c.tmax = 11.5;
  c.nt = 77;
  c.nxi = 13;
  c.t = 0.375;
  c.orders = 21;
  c.tol = 1e-7;
  c.fit_tol = 1e-12;
  c.window_lo = 40.0;
  c.window_hi = 390.0;
  c.per_order = true;
  c.trajectory = true;
  c.deviation = true;
  c.methods = "quadrature,two_level";
  c.input = "series.csv";
  c.out = "result.csv";
  c.format = "csv";
  CHECK(parse_config(emit_config(c)) == c);

  // Values that only survive 17 significant digits.
  c.params.rabi = 1.0 / 3.0;
  c.tol = 0.1 + 0.2;
  CHECK(parse_config(emit_config(c)) == c);
}

TEST_CASE("config parser rejects bad input") {
  CHECK_THROWS_AS(parse_config("bogus_key=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rabi=5\nrabi=6\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rabi\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rabi=ab…\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nt=2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("per_order=yes\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("=5\n"), ConfigError);

  // Comments and blank lines pass through.
  const ScenarioConfig c = parse_config("# comment\n\nrabi=4\n");
  CHECK(c.params.rabi == 4.0);
}

TEST_CASE("presets bind the documented parameters") {
  ScenarioConfig a;
  apply_preset("fig2a", a);
  CHECK(a.params.rabi == doctest::Approx(0.5 / std::sqrt(2.0)));

  ScenarioConfig b;
  apply_preset("fig2b", b);
  CHECK(b.params.rabi == doctest::Approx(std::sqrt(2.0)));

  ScenarioConfig f3;
  apply_preset("fig3", f3);
  CHECK(f3.params.rabi == 3.0);
  CHECK(f3.t == 2.0);

  ScenarioConfig f4;
  apply_preset("fig4", f4);
  CHECK(f4.params.rabi == 5.0);
  CHECK(f4.per_order);

  ScenarioConfig f5;
  apply_preset("fig5", f5);
  CHECK(f5.params.rabi == 5.0);

  ScenarioConfig bad;
  CHECK_THROWS_AS(apply_preset("fig9", bad), ConfigError);
}

TEST_CASE("identical invocations produce byte-identical files") {
  TempDir dir;
  const std::string a = dir.file("a.csv");
  const std::string b = dir.file("b.csv");
  CHECK(run("zones --preset fig2a --out " + a) == 0);
  CHECK(run("zones --preset fig2a --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string ja = dir.file("a.json");
  const std::string jb = dir.file("b.json");
  const std::string fit = "fit --rabi 5 --nt 12 --window_lo 50 "
                          "--window_hi 120 --tol 1e-6 --out ";
  CHECK(run(fit + ja) == 0);
  CHECK(run(fit + jb) == 0);
  CHECK(slurp(ja) == slurp(jb));
}

TEST_CASE("zone table output matches the weak and strong coupling shapes") {
  TempDir dir;
  const std::string weak = dir.file("weak.csv");
  CHECK(run("zones --preset fig2a --nxi 51 --out " + weak) == 0);
  const CsvTable tw = parse_csv(slurp(weak));
  const int re_gp = tw.column("re_gp");
  const int re_gm = tw.column("re_gm");
  REQUIRE(re_gp >= 0);
  for (std::size_t i = 0; i < tw.rows.size(); ++i) {
    CHECK(std::fabs(tw.number(i, re_gp)) < 1e-14);
    CHECK(std::fabs(tw.number(i, re_gm)) < 1e-14);
  }

  const std::string strong = dir.file("strong.csv");
  CHECK(run("zones --preset fig2b --nxi 51 --out " + strong) == 0);
  const CsvTable ts = parse_csv(slurp(strong));
  // At xi = 0 the branches sit at +/- sqrt(7)/4 with width gamma/2 each.
  CHECK(ts.number(0, ts.column("re_gp")) ==
        doctest::Approx(std::sqrt(7.0) / 4.0).epsilon(1e-12));
  CHECK(ts.number(0, ts.column("width_p")) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Full header as specified.
  const char* names[] = {"xi", "re_gp", "im_gp", "re_gm", "im_gm", "width_p",
                         "width_m", "upper_p", "lower_p", "upper_m",
                         "lower_m"};
  for (const char* n : names) CHECK(ts.column(n) >= 0);
}

TEST_CASE("density snapshot carries exact and gaussian columns") {
  TempDir dir;
  const std::string out = dir.file("density.csv");
  CHECK(run("density --preset fig3 --nxi 201 --out " + out) == 0);
  const CsvTable t = parse_csv(slurp(out));
  const int ge = t.column("gauss_e");
  REQUIRE(ge >= 0);
  double peak = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    peak = std::max(peak, t.number(i, ge));
  }
  // Gaussian e-peak is e^{-1}/(gamma t) / pi at gamma t = 2.
  CHECK(peak == doctest::Approx(std::exp(-1.0) / 2.0 / kPi).epsilon(5e-3));

  // Density columns mirror about xi = pi/2.
  const int dm = t.column("density_m");
  const int de = t.column("density_e");
  const std::size_t n = t.rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(t.number(i, dm) ==
          doctest::Approx(t.number(n - 1 - i, dm)).epsilon(1e-10));
    CHECK(t.number(i, de) ==
          doctest::Approx(t.number(n - 1 - i, de)).epsilon(1e-10));
  }

  // At t = 0 the metastable channel is flat at 1/pi.
  const std::string flat = dir.file("flat.csv");
  CHECK(run("density --rabi 3 --t 0 --nxi 21 --out " + flat) == 0);
  const CsvTable tf = parse_csv(slurp(flat));
  const int dm0 = tf.column("density_m");
  const int de0 = tf.column("density_e");
  for (std::size_t i = 0; i < tf.rows.size(); ++i) {
    CHECK(tf.number(i, dm0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(tf.number(i, de0) == 0.0);
  }
}

TEST_CASE("totals methods agree where they must") {
  TempDir dir;
  const std::string out = dir.file("totals.csv");
  CHECK(run("totals --preset fig5 --nt 13 --out " + out) == 0);
  const CsvTable t = parse_csv(slurp(out));
  const int ct = t.column("t");
  const int cm = t.column("w_m");
  const int ce = t.column("w_e");
  const int cmethod = t.column("method");
  REQUIRE(cmethod >= 0);

  std::map<std::string, std::map<double, std::pair<double, double>>> blocks;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    blocks[t.rows[i][static_cast<std::size_t>(cmethod)]]
          [t.number(i, ct)] = {t.number(i, cm), t.number(i, ce)};
  }
  // The t = 0 rows restate the initial condition.
  CHECK(blocks["quadrature"][0.0].first == 1.0);
  CHECK(blocks["quadrature"][0.0].second == 0.0);
  CHECK(blocks["two_level"][0.0].first == 1.0);
  // Fourier-sum and quadrature totals are the same numbers.
  for (const auto& [time, wq] : blocks["quadrature"]) {
    const auto& ws = blocks["mode_sum"][time];
    CHECK(std::fabs(wq.first - ws.first) < 1e-6);
    CHECK(std::fabs(wq.second - ws.second) < 1e-6);
  }
  // Asymptotic rows evaluate the closed power laws.
  for (const auto& [time, wa] : blocks["asymptotic"]) {
    const auto [am, ae] = asymptotic_totals(ModelParams{.rabi = 5.0}, time);
    CHECK(wa.first == doctest::Approx(am).epsilon(1e-15));
    CHECK(wa.second == doctest::Approx(ae).epsilon(1e-15));
  }
}

TEST_CASE("diffraction spectrum honors selection rules and closed forms") {
  TempDir dir;
  const std::string out = dir.file("spec.csv");
  CHECK(run("diffraction --rabi 5 --t 2 --orders 8 --out " + out) == 0);
  const CsvTable t = parse_csv(slurp(out));
  const int cn = t.column("n");
  const int cch = t.column("channel");
  const int cw = t.column("w");
  const int cc = t.column("w_closed");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const int n = static_cast<int>(t.number(i, cn));
    const bool is_m = t.rows[i][static_cast<std::size_t>(cch)] == "m";
    const bool allowed = is_m == (n % 2 == 0);
    if (!allowed) {
      CHECK(t.number(i, cw) < 1e-12);
      CHECK(t.number(i, cc) == 0.0);
    } else {
      CHECK(std::fabs(t.number(i, cw) - t.number(i, cc)) < 1e-8);
    }
  }
}

TEST_CASE("per-order diffraction files track the orders over time") {
  TempDir dir;
  const std::string out = dir.file("orders.csv");
  CHECK(run("diffraction --preset fig4 --orders 2 --nt 9 --tmax 2 --out " +
            out) == 0);
  // Order 0 starts at weight 1, the excited order 1 at 0.
  const CsvTable t0 = parse_csv(slurp(dir.file("orders_n0.csv")));
  CHECK(t0.number(0, t0.column("w")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t0.rows[0][static_cast<std::size_t>(t0.column("channel"))] == "m");
  const CsvTable t1 = parse_csv(slurp(dir.file("orders_n1.csv")));
  CHECK(t1.number(0, t1.column("w")) == doctest::Approx(0.0));
  CHECK(t1.rows[0][static_cast<std::size_t>(t1.column("channel"))] == "e");
  const CsvTable t2 = parse_csv(slurp(dir.file("orders_n2.csv")));
  CHECK(t2.rows.size() == 9);
  // Closed forms ride along in every file.
  for (std::size_t i = 0; i < t2.rows.size(); ++i) {
    CHECK(std::fabs(t2.number(i, t2.column("w")) -
                    t2.number(i, t2.column("w_closed"))) < 1e-8);
  }
  // Streaming per-order output is a usage error.
  CHECK(run("diffraction --per_order --rabi 5 --nt 3 --out -") == 2);
}

TEST_CASE("ladder summary matches the analytic totals at zero recoil") {
  TempDir dir;
  const std::string out = dir.file("ladder.csv");
  CHECK(run("ladder --rabi 3 --tmax 4 --nt 9 --out " + out) == 0);
  const CsvTable t = parse_csv(slurp(out));
  const int ct = t.column("t");
  const int cm = t.column("w_m");
  const int ce = t.column("w_e");
  const int cb = t.column("boundary_norm");
  ModelParams p;
  p.rabi = 3.0;
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto [wm, we] = total_populations(p, t.number(i, ct), spec);
    CHECK(std::fabs(t.number(i, cm) - wm) < 1e-6);
    CHECK(std::fabs(t.number(i, ce) - we) < 1e-6);
    CHECK(t.number(i, cb) < 1e-9);
  }

  // Omega = 0 freezes the initial beam.
  const std::string frozen = dir.file("frozen.csv");
  CHECK(run("ladder --rabi 0 --tmax 3 --nt 4 --out " + frozen) == 0);
  const CsvTable tf = parse_csv(slurp(frozen));
  for (std::size_t i = 0; i < tf.rows.size(); ++i) {
    CHECK(tf.number(i, tf.column("w_m")) == doctest::Approx(1.0));
    CHECK(tf.number(i, tf.column("w_e")) == doctest::Approx(0.0));
  }
}

TEST_CASE("trajectory symmetry tracks the incidence geometry") {
  // A beam entering along the axis sees a parity-even potential and stays
  // mirror symmetric in n. Detuning alone only re-gauges the phases, so
  // the weights stay symmetric too; detuning plus recoil tilts the
  // dispersion n^2 w_r + n d and skews the orders.
  TempDir dir;
  const std::string plain = dir.file("plain.csv");
  const std::string gauge = dir.file("gauge.csv");
  const std::string tilted = dir.file("tilted.csv");
  CHECK(run("ladder --rabi 2 --tmax 2 --nt 2 --trajectory --out " + plain) ==
        0);
  CHECK(run("ladder --rabi 2 --detuning 0.2 --tmax 2 --nt 2 --trajectory "
            "--out " + gauge) == 0);
  CHECK(run("ladder --rabi 2 --detuning 0.2 --recoil 0.01 --tmax 2 --nt 2 "
            "--trajectory --out " + tilted) == 0);

  auto order_weights = [](const CsvTable& t) {
    std::map<std::pair<std::string, int>, double> w;
    const int cn = t.column("n");
    const int cch = t.column("channel");
    const int cre = t.column("re");
    const int cim = t.column("im");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double re = t.number(i, cre), im = t.number(i, cim);
      w[{t.rows[i][static_cast<std::size_t>(cch)],
         static_cast<int>(t.number(i, cn))}] += re * re + im * im;
    }
    return w;
  };
  auto asymmetry = [](std::map<std::pair<std::string, int>, double> w) {
    double total = 0.0;
    for (const auto& [key, wp] : w) {
      if (key.second <= 0) continue;
      total += std::fabs(wp - w[{key.first, -key.second}]);
    }
    return total;
  };
  CHECK(asymmetry(order_weights(parse_csv(slurp(plain)))) < 1e-12);
  CHECK(asymmetry(order_weights(parse_csv(slurp(gauge)))) < 1e-12);
  CHECK(asymmetry(order_weights(parse_csv(slurp(tilted)))) > 1e-4);

  // Trajectory and deviation outputs are mutually exclusive.
  CHECK(run("ladder --rabi 2 --trajectory --deviation --out -") == 2);
}

TEST_CASE("fit report carries both channels and the suppression block") {
  TempDir dir;
  const std::string out = dir.file("fit.json");
  CHECK(run("fit --rabi 5 --nt 25 --out " + out) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  REQUIRE(j["fits"].size() == 2);
  const auto& m = j["fits"][0];
  CHECK(m["channel"] == "m");
  CHECK(std::fabs(m["exponent"].get<double>() + 0.5) < 0.05);
  CHECK(m["expected_prefactor"].get<double>() ==
        doctest::Approx(0.11283791670955128));
  const auto& e = j["fits"][1];
  CHECK(e["channel"] == "e");
  CHECK(std::fabs(e["exponent"].get<double>() + 1.5) < 0.1);
  for (const char* key : {"channel", "exponent", "prefactor", "residual",
                          "window", "expected_exponent",
                          "expected_prefactor"}) {
    CHECK(m.contains(key));
  }
  REQUIRE(j["suppression"]["ratios"].size() == 3);
  const auto r = j["suppression"]["ratios"];
  CHECK(r[0].get<double>() < 0.5);
  CHECK(r[1].get<double>() < r[0].get<double>());
  CHECK(r[2].get<double>() < r[1].get<double>());
}

TEST_CASE("fit ingests an external series") {
  TempDir dir;
  // A synthetic pure power law round-trips through the file interface.
  CsvWriter w({"t", "w_m", "w_e", "method"});
  for (int i = 0; i < 16; ++i) {
    const double t = 50.0 + 20.0 * i;
    w.add_row({CsvWriter::cell(t), CsvWriter::cell(0.3 / std::sqrt(t)),
               CsvWriter::cell(2.0 * std::pow(t, -1.5)), "quadrature"});
    // A decoy block that must be ignored.
    w.add_row({CsvWriter::cell(t), CsvWriter::cell(1.0), CsvWriter::cell(1.0),
               "two_level"});
  }
  const std::string in = dir.file("series.csv");
  w.write(in);

  const std::string out = dir.file("fit.json");
  CHECK(run("fit --rabi 5 --input " + in + " --window_lo 50 --window_hi 400 "
            "--out " + out) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["fits"][0]["exponent"].get<double>() ==
        doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(j["fits"][0]["prefactor"].get<double>() ==
        doctest::Approx(0.3).epsilon(1e-10));
  CHECK(j["fits"][1]["exponent"].get<double>() ==
        doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(j["suppression"].is_null());
}

TEST_CASE("exit codes distinguish usage, convergence, and io failures") {
  TempDir dir;
  CHECK(run("") == 2);                                     // no command
  CHECK(run("frobnicate") == 2);                           // unknown command
  CHECK(run("zones --no-such-flag 1") == 2);               // unknown flag
  CHECK(run("zones --nxi 2 --out -") == 2);                // degenerate grid
  CHECK(run("zones --preset fig9 --out -") == 2);          // unknown preset
  CHECK(run("totals --format json --nt 2 --out -") == 2);  // format clash
  CHECK(run("fit --rabi 5 --nt 4 --out -") == 2);          // too few points
  CHECK(run("zones --out /nonexistent/z.csv") == 4);       // unwritable path
  CHECK(run("fit --input /nonexistent.csv --out -") == 4); // unreadable input
  CHECK(run("--help") == 0);
  // A tolerance below machine precision exhausts the bisection depth.
  CHECK(run("totals --tmax 2 --nt 3 --rabi 5 --methods quadrature "
            "--tol 1e-40 --out -") == 3);
}

TEST_CASE("config file feeds flags and explicit flags still win") {
  TempDir dir;
  const std::string cfg = dir.file("cfg.txt");
  std::ofstream(cfg) << "rabi=1.5\nnxi=11\n";
  const std::string a = dir.file("a.csv");
  CHECK(run("zones --config " + cfg + " --out " + a) == 0);
  CHECK(parse_csv(slurp(a)).rows.size() == 11);

  const std::string b = dir.file("b.csv");
  CHECK(run("zones --config " + cfg + " --nxi 5 --out " + b) == 0);
  CHECK(parse_csv(slurp(b)).rows.size() == 5);

  // Unknown keys in the file are rejected.
  const std::string bad = dir.file("bad.txt");
  std::ofstream(bad) << "rabi=1.5\nmystery=1\n";
  CHECK(run("zones --config " + bad + " --out -") == 2);
}
