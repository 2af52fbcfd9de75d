#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"
#include "nudirac/models.hpp"

namespace nudirac::cli {

struct ScanDraw {
  double m0 = 0.0;
  double delta = 0.0;
  int n = 0;
};

struct ScanResult {
  ScanDraw draw;
  double e_squared = 0.0;
  bool predicate = false;
  bool consistent = true;  // predicate <=> E^2 > 0
  std::string error;       // non-empty when A = 0
};

struct ScanSummary {
  std::size_t draws = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t mismatches = 0;
  std::size_t predicate_true = 0;
  std::size_t positive_e_squared = 0;
};

struct DeltaProbeRow {
  double delta = 0.0;
  double abs_e = 0.0;
  double abs_e_squared_over_delta = 0.0;
};

/// Log-uniform m0 and delta on the configured ranges, uniform n in
/// [0, scan n_max], from a 64-bit Mersenne Twister with the given seed. The
/// draw sequence is fully determined by the seed.
std::vector<ScanDraw> generate_draws(const ScanSpec& spec, std::uint64_t seed);

/// Evaluates the sigmoid spectrum and reality predicate for every draw on
/// `threads` workers (0: hardware concurrency); results keep draw order.
std::vector<ScanResult> evaluate_draws(const std::vector<ScanDraw>& draws, int threads);

ScanSummary summarize(const std::vector<ScanResult>& results);

std::vector<DeltaProbeRow> delta_probe_rows(MassKind kind, double m0, int n,
                                            const std::vector<double>& deltas);

}  // namespace nudirac::cli
