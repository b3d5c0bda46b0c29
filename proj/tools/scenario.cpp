#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "swdecay/csv.hpp"
#include "swdecay/errors.hpp"

namespace swdecay {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: '" + v +
                      "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "0") return false;
  if (v == "1") return true;
  throw ConfigError("config key '" + key + "': expected 0 or 1, got '" + v +
                    "'");
}

std::string cell_int(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d", v);
  return buf;
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& other) const {
  return params.rabi == other.params.rabi &&
         params.rabi_phase == other.params.rabi_phase &&
         params.gamma == other.params.gamma &&
         params.recoil == other.params.recoil &&
         params.detuning == other.params.detuning && tmax == other.tmax &&
         nt == other.nt && nxi == other.nxi && t == other.t &&
         orders == other.orders && tol == other.tol &&
         fit_tol == other.fit_tol && window_lo == other.window_lo &&
         window_hi == other.window_hi && per_order == other.per_order &&
         trajectory == other.trajectory && deviation == other.deviation &&
         methods == other.methods && input == other.input &&
         out == other.out && format == other.format;
}

std::string emit_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "rabi=" << format_double(c.params.rabi) << "\n"
     << "rabi_phase=" << format_double(c.params.rabi_phase) << "\n"
     << "gamma=" << format_double(c.params.gamma) << "\n"
     << "recoil=" << format_double(c.params.recoil) << "\n"
     << "detuning=" << format_double(c.params.detuning) << "\n"
     << "tmax=" << format_double(c.tmax) << "\n"
     << "nt=" << cell_int(c.nt) << "\n"
     << "nxi=" << cell_int(c.nxi) << "\n"
     << "t=" << format_double(c.t) << "\n"
     << "orders=" << cell_int(c.orders) << "\n"
     << "tol=" << format_double(c.tol) << "\n"
     << "fit_tol=" << format_double(c.fit_tol) << "\n"
     << "window_lo=" << format_double(c.window_lo) << "\n"
     << "window_hi=" << format_double(c.window_hi) << "\n"
     << "per_order=" << (c.per_order ? "1" : "0") << "\n"
     << "trajectory=" << (c.trajectory ? "1" : "0") << "\n"
     << "deviation=" << (c.deviation ? "1" : "0") << "\n"
     << "methods=" << c.methods << "\n"
     << "input=" << c.input << "\n"
     << "out=" << c.out << "\n"
     << "format=" << c.format << "\n";
  return os.str();
}

std::map<std::string, std::string> read_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + cell_int(lineno) +
                        ": expected key=value, got '" + s + "'");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + cell_int(lineno) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config key '" + key + "' given twice");
    }
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  ScenarioConfig& c) {
  for (const auto& [key, v] : kv) {
    if (key == "rabi") c.params.rabi = parse_double(key, v);
    else if (key == "rabi_phase") c.params.rabi_phase = parse_double(key, v);
    else if (key == "gamma") c.params.gamma = parse_double(key, v);
    else if (key == "recoil") c.params.recoil = parse_double(key, v);
    else if (key == "detuning") c.params.detuning = parse_double(key, v);
    else if (key == "tmax") c.tmax = parse_double(key, v);
    else if (key == "nt") c.nt = parse_int(key, v);
    else if (key == "nxi") c.nxi = parse_int(key, v);
    else if (key == "t") c.t = parse_double(key, v);
    else if (key == "orders") c.orders = parse_int(key, v);
    else if (key == "tol") c.tol = parse_double(key, v);
    else if (key == "fit_tol") c.fit_tol = parse_double(key, v);
    else if (key == "window_lo") c.window_lo = parse_double(key, v);
    else if (key == "window_hi") c.window_hi = parse_double(key, v);
    else if (key == "per_order") c.per_order = parse_bool(key, v);
    else if (key == "trajectory") c.trajectory = parse_bool(key, v);
    else if (key == "deviation") c.deviation = parse_bool(key, v);
    else if (key == "methods") c.methods = v;
    else if (key == "input") c.input = v;
    else if (key == "out") c.out = v;
    else if (key == "format") c.format = v;
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  apply_config(read_config_text(text), c);
  return c;
}

void load_config_file(const std::string& path, ScenarioConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  apply_config(read_config_text(os.str()), config);
}

void apply_preset(const std::string& name, ScenarioConfig& c) {
  if (name == "fig2a") {
    c.params.rabi = 0.5 / std::sqrt(2.0);  // 2|Omega| = gamma/sqrt(2)
  } else if (name == "fig2b") {
    c.params.rabi = std::sqrt(2.0);        // 2|Omega| = 2 sqrt(2) gamma
  } else if (name == "fig3") {
    c.params.rabi = 3.0;
    c.t = 2.0;
  } else if (name == "fig4") {
    c.params.rabi = 5.0;
    c.tmax = 6.0;
    c.orders = 6;
    c.per_order = true;
  } else if (name == "fig5") {
    c.params.rabi = 5.0;
    c.tmax = 6.0;
  } else {
    throw ConfigError("unknown preset '" + name +
                      "' (expected fig2a, fig2b, fig3, fig4, or fig5)");
  }
}

}  // namespace swdecay
