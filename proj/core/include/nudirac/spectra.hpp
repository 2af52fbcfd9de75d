#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nudirac/models.hpp"
#include "nudirac/nu_engine.hpp"

namespace nudirac {

/// Square root with the pair convention used for +/-E: real w >= 0 maps to
/// +sqrt(w), w < 0 maps to +i sqrt(|w|).
cplx signed_root(double w);

struct EnergyLevel {
  int n = 0;
  double e_squared = 0.0;
  cplx e_plus;
  cplx e_minus;
  /// Etilde: sqrt(E^2/delta^2) for ExponentialRising, sqrt(-E^2/delta^2) for
  /// SigmoidSaturating (same root convention as signed_root).
  cplx tilde_e;
  /// epsilon for ExponentialRising, M = sqrt(Etilde^2 + alpha^2) for
  /// SigmoidSaturating (NaN when Etilde^2 + alpha^2 < 0).
  double aux = 0.0;
  /// Spectral parameter of hypergeometric_form() at this level.
  double spectral = 0.0;
  /// NU branch at the quantized root; only set by energy_via_nu.
  std::optional<nu::NuBranch> branch;

  /// Same level with E^2 scaled by (1 + relative); the branch is kept.
  EnergyLevel perturbed(double relative) const;
};

/// Builds a level from E^2, filling the auxiliary quantities.
EnergyLevel make_level(const MassModel& model, int n, double e_squared);

/// sqrt(delta^2 + 4 m0^2) - delta (2n + 1), the denominator of the
/// sigmoid spectrum.
double sigmoid_gap(const MassModel& model, int n);

/// Printed closed forms:
///   ExponentialRising: E^2 = m0^2 - delta^2/4 (2n + 1 + 2 m0/delta)^2
///   SigmoidSaturating: E^2 = (8 m0^2 - A^2 - (4 m0^2 / A)^2) / 16
/// Throws DegenerateDenominator when A = 0.
EnergyLevel energy_closed_form(const MassModel& model, int n);

struct DiscrepancyReport {
  double nu_e_squared = 0.0;
  double closed_e_squared = 0.0;
  double abs_diff = 0.0;
  /// |dE^2| / max(1, |E^2_closed|)
  double rel_diff = 0.0;
  bool within(double tol) const { return rel_diff <= tol; }
};

struct NuLevel {
  EnergyLevel level;
  nu::Quantization quantization;
  nu::Bracket bracket;
  DiscrepancyReport discrepancy;
};

/// Quantizes hypergeometric_form(model) around the closed-form spectral
/// parameter g: bracket [0.25 g, 2.25 g], split into 16 pieces and then
/// widened geometrically (up to 2^10) on NoSignChange. Agreement with the closed form is reported in the
/// discrepancy field.
NuLevel energy_via_nu(const MassModel& model, int n);

/// 8 m0^2 > A^2 + (4 m0^2 / A)^2 for the sigmoid model. Throws
/// std::invalid_argument for the rising model and DegenerateDenominator at A = 0.
bool reality_predicate(const MassModel& model, int n);

/// |E| from the closed form for each delta (positive, strictly decreasing).
std::vector<double> delta_limit_probe(const MassModel& model, int n,
                                      std::span<const double> deltas);

struct SpectrumRow {
  int n = 0;
  std::optional<EnergyLevel> closed;
  std::optional<NuLevel> nu;
  std::optional<bool> reality;
  std::string error;  // empty when every part of the row succeeded
};

/// Levels n = 0..n_max. Per-level failures are recorded in the row instead
/// of aborting the table.
std::vector<SpectrumRow> spectrum_table(const MassModel& model, int n_max);

}  // namespace nudirac
