#include "landau/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace landau {

namespace {

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v)) throw ConfigError("config: '" + key + "' must be an integer");
  return static_cast<long long>(v);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

RunConfig::RunConfig() {
  thetas = {0.3, M_PI / 4.0, 1.0, M_PI / 2.0, 2.5};
  tol = {
      {"classical-equiv", 1e-7},  {"energy-drift", 1e-9},
      {"symplectic", 1e-9},       {"kamiltonian", 1e-7},
      {"rotation-series", 1e-10}, {"generating-function", 1e-10},
      {"orthonormality", 1e-10},  {"eigen-residual", 1e-5},
      {"unitarity", 1e-9},        {"leakage", 1e-9},
      {"composition", 1e-8},      {"identity", 1e-12},
      {"audit-flag", 1e-6},       {"map-norm", 1e-10},
      {"consistency", 1e-3},      {"stationarity", 1e-5},
      {"convergence", 1.0},       {"norm-drift", 1e-3},
  };
}

void RunConfig::validate() const {
  if (grid_n < 16 || (grid_n & (grid_n - 1)) != 0)
    throw ConfigError("config: grid-n must be a power of two >= 16");
  if (!(grid_l > 0.0)) throw ConfigError("config: grid-l must be > 0");
  if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (max_quanta < 0) throw ConfigError("config: max-quanta must be >= 0");
  if (quad_order < 1 || quad_order > 300)
    throw ConfigError("config: quad-order must be in [1, 300]");
  if (taps != 4 && taps != 5 && taps != 6 && taps != 8)
    throw ConfigError("config: taps must be 4, 5, 6 or 8");
  if (format != "json" && format != "csv")
    throw ConfigError("config: format must be json or csv");
  if (field.mass <= 0.0 || field.light_speed <= 0.0 || field.hbar <= 0.0)
    throw ConfigError("config: mass, c and hbar must be > 0");
  for (const auto& [name, value] : tol)
    if (!(value > 0.0)) throw ConfigError("config: tolerance '" + name + "' must be > 0");
  if (thetas.empty()) throw ConfigError("config: theta list must not be empty");
}

double RunConfig::tolerance(const std::string& name) const {
  const auto it = tol.find(name);
  if (it == tol.end()) throw ConfigError("config: unknown tolerance '" + name + "'");
  return it->second;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "q") cfg.field.charge = parse_number(key, value);
  else if (key == "B") cfg.field.field = parse_number(key, value);
  else if (key == "mass") cfg.field.mass = parse_number(key, value);
  else if (key == "c") cfg.field.light_speed = parse_number(key, value);
  else if (key == "hbar") cfg.field.hbar = parse_number(key, value);
  else if (key == "grid-n") cfg.grid_n = static_cast<int>(parse_integer(key, value));
  else if (key == "grid-l") cfg.grid_l = parse_number(key, value);
  else if (key == "dt") cfg.dt = parse_number(key, value);
  else if (key == "max-quanta") cfg.max_quanta = static_cast<int>(parse_integer(key, value));
  else if (key == "quad-order") cfg.quad_order = static_cast<int>(parse_integer(key, value));
  else if (key == "taps") cfg.taps = static_cast<int>(parse_integer(key, value));
  else if (key == "seed") cfg.seed = static_cast<unsigned long long>(parse_integer(key, value));
  else if (key == "out") cfg.out_dir = value;
  else if (key == "format") cfg.format = value;
  else if (key == "theta") {
    cfg.thetas.clear();
    std::istringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) cfg.thetas.push_back(parse_number(key, trim(item)));
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (cfg.tol.find(name) == cfg.tol.end())
      throw ConfigError("config: unknown tolerance '" + name + "'");
    cfg.tol[name] = parse_number(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not key = value");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace landau
