#pragma once

#include <ostream>

#include "config.hpp"

namespace nudirac::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitLevel = 2,
  kExitVerification = 3,
};

// Each command writes its artifact to `out` (the caller resolves --out) and
// diagnostics to `err`, and returns the exit code.

/// Rows {n, E^2, Re E, Im E, NU agreement, reality predicate}; 2 when any
/// level fails.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Samples x, z, phi, f, g, psi+, psi- for level config.n on the x-grid.
int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Every residual oracle for n = 0..n_max plus the informational printed-g
/// comparison; 3 when an authoritative check fails, otherwise 2 when a
/// level could not be computed.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Seeded random sigmoid draws (predicate vs E^2 > 0) and the delta -> 0
/// probes for both models; 3 on any predicate mismatch.
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (and --config), then dispatches to a command. Artifacts
/// go to --out when given, otherwise to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nudirac::cli
