#include "config.hpp"

#include <cmath>
#include <limits>

namespace nudirac::cli {

namespace {

using nlohmann::json;

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<long long>(d);
  }
  throw ConfigError("'" + key + "' must be an integer");
}

int as_int(const json& v, const std::string& key) {
  const long long i = as_integer(v, key);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    throw ConfigError("'" + key + "' is out of range");
  }
  return static_cast<int>(i);
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model",     "m0",        "delta",     "n-max",      "n",          "grid-min",
      "grid-max",  "grid-points", "energy-sign", "format",   "out",        "perturb-energy",
      "seed",      "threads",   "tol-ode",   "tol-dirac",  "tol-weight", "draws",
      "scan-n-max", "m0-min",   "m0-max",    "delta-min",  "delta-max",  "deltas"};
  return keys;
}

void apply_json(RunConfig& c, const json& patch) {
  if (!patch.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : patch.items()) {
    if (key == "model") {
      try {
        c.model = parse_mass_kind(as_string(v, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "m0") {
      c.m0 = as_double(v, key);
    } else if (key == "delta") {
      c.delta = as_double(v, key);
    } else if (key == "n-max") {
      c.n_max = as_int(v, key);
    } else if (key == "n") {
      c.n = as_int(v, key);
    } else if (key == "grid-min") {
      c.grid.min = as_double(v, key);
    } else if (key == "grid-max") {
      c.grid.max = as_double(v, key);
    } else if (key == "grid-points") {
      c.grid.points = as_int(v, key);
    } else if (key == "energy-sign") {
      const auto s = as_string(v, key);
      if (s == "plus") {
        c.energy_sign = EnergySign::Plus;
      } else if (s == "minus") {
        c.energy_sign = EnergySign::Minus;
      } else {
        throw ConfigError("'energy-sign' must be plus or minus");
      }
    } else if (key == "format") {
      const auto s = as_string(v, key);
      if (s == "json") {
        c.format = Format::Json;
      } else if (s == "csv") {
        c.format = Format::Csv;
      } else {
        throw ConfigError("'format' must be json or csv");
      }
    } else if (key == "out") {
      c.out = as_string(v, key);
    } else if (key == "perturb-energy") {
      c.perturb_energy = as_double(v, key);
    } else if (key == "seed") {
      const long long s = as_integer(v, key);
      if (s < 0) throw ConfigError("'seed' must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "threads") {
      c.threads = as_int(v, key);
    } else if (key == "tol-ode") {
      c.tol.ode = as_double(v, key);
    } else if (key == "tol-dirac") {
      c.tol.dirac = as_double(v, key);
    } else if (key == "tol-weight") {
      c.tol.weight = as_double(v, key);
    } else if (key == "draws") {
      c.scan.draws = as_int(v, key);
    } else if (key == "scan-n-max") {
      c.scan.n_max = as_int(v, key);
    } else if (key == "m0-min") {
      c.scan.m0_min = as_double(v, key);
    } else if (key == "m0-max") {
      c.scan.m0_max = as_double(v, key);
    } else if (key == "delta-min") {
      c.scan.delta_min = as_double(v, key);
    } else if (key == "delta-max") {
      c.scan.delta_max = as_double(v, key);
    } else if (key == "deltas") {
      if (!v.is_array()) throw ConfigError("'deltas' must be an array of numbers");
      c.scan.deltas.clear();
      for (const auto& d : v) c.scan.deltas.push_back(as_double(d, key));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(what) + " must be positive and finite");
    }
  };
  positive(c.m0, "m0");
  positive(c.delta, "delta");
  if (c.n_max < 0) throw ConfigError("n-max must be non-negative");
  if (c.n < 0 || c.n > c.n_max) throw ConfigError("n must satisfy 0 <= n <= n-max");
  if (c.grid.points && *c.grid.points < 5) throw ConfigError("grid-points must be at least 5");
  const double lo = c.grid_min();
  const double hi = c.grid_max();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("grid range must be finite with grid-min < grid-max");
  }
  if (!std::isfinite(c.perturb_energy)) throw ConfigError("perturb-energy must be finite");
  if (c.threads < 0) throw ConfigError("threads must be non-negative");
  positive(c.tol.ode, "tol-ode");
  positive(c.tol.dirac, "tol-dirac");
  positive(c.tol.weight, "tol-weight");

  const auto& s = c.scan;
  if (s.draws < 1) throw ConfigError("draws must be at least 1");
  if (s.n_max < 0) throw ConfigError("scan-n-max must be non-negative");
  positive(s.m0_min, "m0-min");
  positive(s.m0_max, "m0-max");
  positive(s.delta_min, "delta-min");
  positive(s.delta_max, "delta-max");
  if (!(s.m0_min < s.m0_max)) throw ConfigError("empty m0 range");
  if (!(s.delta_min < s.delta_max)) throw ConfigError("empty delta range");
  if (s.deltas.empty()) throw ConfigError("deltas must not be empty");
  for (std::size_t i = 0; i < s.deltas.size(); ++i) {
    positive(s.deltas[i], "deltas");
    if (i > 0 && !(s.deltas[i] < s.deltas[i - 1])) {
      throw ConfigError("deltas must be strictly decreasing");
    }
  }
}

std::string_view to_string(EnergySign sign) { return sign == EnergySign::Plus ? "plus" : "minus"; }

std::string_view to_string(Format format) { return format == Format::Json ? "json" : "csv"; }

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = std::string(nudirac::to_string(c.model));
  j["m0"] = c.m0;
  j["delta"] = c.delta;
  j["n-max"] = c.n_max;
  j["n"] = c.n;
  j["grid-min"] = c.grid_min();
  j["grid-max"] = c.grid_max();
  j["grid-points"] = c.grid.points ? nlohmann::ordered_json(*c.grid.points) : nlohmann::ordered_json(nullptr);
  j["energy-sign"] = std::string(to_string(c.energy_sign));
  j["format"] = std::string(to_string(c.format));
  j["perturb-energy"] = c.perturb_energy;
  j["seed"] = c.seed;
  j["tol-ode"] = c.tol.ode;
  j["tol-dirac"] = c.tol.dirac;
  j["tol-weight"] = c.tol.weight;
  j["draws"] = c.scan.draws;
  j["scan-n-max"] = c.scan.n_max;
  j["m0-min"] = c.scan.m0_min;
  j["m0-max"] = c.scan.m0_max;
  j["delta-min"] = c.scan.delta_min;
  j["delta-max"] = c.scan.delta_max;
  j["deltas"] = c.scan.deltas;
  return j;
}

}  // namespace nudirac::cli
