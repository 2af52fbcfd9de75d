#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nudirac/models.hpp"
#include "nudirac/wavefun.hpp"

namespace nudirac::cli {

/// Any invalid configuration value or key; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct GridSpec {
  std::optional<double> min;  // default -10/delta
  std::optional<double> max;  // default +10/delta
  std::optional<int> points;  // default depends on the command
};

struct Tolerances {
  double ode = 1e-8;
  double dirac = 5e-6;
  double weight = 1e-6;
};

struct ScanSpec {
  int draws = 10000;
  int n_max = 10;
  double m0_min = 0.01;
  double m0_max = 100.0;
  double delta_min = 0.01;
  double delta_max = 100.0;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
};

struct RunConfig {
  MassKind model = MassKind::ExponentialRising;
  double m0 = 1.0;
  double delta = 1.0;
  int n_max = 5;
  int n = 0;
  GridSpec grid;
  EnergySign energy_sign = EnergySign::Plus;
  Format format = Format::Json;
  std::string out;
  double perturb_energy = 0.0;
  std::uint64_t seed = 20240601;
  int threads = 0;  // 0: hardware concurrency
  Tolerances tol;
  ScanSpec scan;

  MassModel mass_model() const { return MassModel::make(model, m0, delta); }
  double grid_min() const { return grid.min.value_or(-10.0 / delta); }
  double grid_max() const { return grid.max.value_or(10.0 / delta); }
};

/// Keys accepted in config files; flags use the same names with "--".
const std::vector<std::string>& config_keys();

/// Applies the keys of `patch` on top of `config`. Throws ConfigError for
/// unknown keys or values of the wrong type.
void apply_json(RunConfig& config, const nlohmann::json& patch);

/// Checks the RunConfig invariants; throws ConfigError.
void validate(const RunConfig& config);

/// Config echo with every resolved field that affects results (out and
/// threads are omitted so artifacts do not depend on them).
nlohmann::ordered_json to_json(const RunConfig& config);

std::string_view to_string(EnergySign sign);
std::string_view to_string(Format format);

}  // namespace nudirac::cli
