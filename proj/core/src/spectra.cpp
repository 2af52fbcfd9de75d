#include "nudirac/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nudirac/errors.hpp"

namespace nudirac {

cplx signed_root(double w) {
  if (w >= 0.0) return {std::sqrt(w), 0.0};
  return {0.0, std::sqrt(-w)};
}

EnergyLevel EnergyLevel::perturbed(double relative) const {
  EnergyLevel out = *this;
  out.e_squared = e_squared * (1.0 + relative);
  out.e_plus = signed_root(out.e_squared);
  out.e_minus = -out.e_plus;
  return out;
}

EnergyLevel make_level(const MassModel& model, int n, double e_squared) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  EnergyLevel lv;
  lv.n = n;
  lv.e_squared = e_squared;
  lv.e_plus = signed_root(e_squared);
  lv.e_minus = -lv.e_plus;
  const double d2 = model.delta * model.delta;
  const double a2 = model.alpha() * model.alpha();
  if (model.kind == MassKind::ExponentialRising) {
    lv.tilde_e = signed_root(e_squared / d2);
    lv.aux = a2 - e_squared / d2;
    lv.spectral = lv.aux >= 0.0 ? -std::sqrt(lv.aux) : nan;
  } else {
    const double te2 = -e_squared / d2;
    lv.tilde_e = signed_root(te2);
    lv.aux = te2 + a2 >= 0.0 ? std::sqrt(te2 + a2) : nan;
    lv.spectral = te2;
  }
  return lv;
}

double sigmoid_gap(const MassModel& model, int n) {
  const double d = model.delta;
  return std::sqrt(d * d + 4.0 * model.m0 * model.m0) - d * (2.0 * n + 1.0);
}

namespace {

// 8 m0^2 - A^2 - (4 m0^2 / A)^2; shared by the spectrum and the predicate so
// that both always agree on its sign.
double sigmoid_reality_margin(const MassModel& model, int n) {
  const double a = sigmoid_gap(model, n);
  if (a == 0.0) throw DegenerateDenominator("sqrt(delta^2 + 4 m0^2) = delta (2n + 1)");
  const double m2 = model.m0 * model.m0;
  const double b = 4.0 * m2 / a;
  return 8.0 * m2 - (a * a + b * b);
}

void check_n(int n) {
  if (n < 0) throw std::invalid_argument("quantum number must be non-negative");
}

// [0.25 g, 2.25 g], then its 16 equal pieces when the quantization function
// has two roots inside and no sign change across the whole bracket; the
// root nearest g wins.
bool quantize_around(const nu::HypergeometricForm& form, int n, double g, NuLevel& out) {
  out.bracket = {0.25 * g, 2.25 * g};
  try {
    out.quantization = nu::quantize(form, n, out.bracket);
    return true;
  } catch (const NoSignChange&) {
  }
  constexpr int kPieces = 16;
  bool found = false;
  for (int i = 0; i < kPieces; ++i) {
    const nu::Bracket piece{0.25 * g + 2.0 * g * i / kPieces, 0.25 * g + 2.0 * g * (i + 1) / kPieces};
    try {
      const auto q = nu::quantize(form, n, piece);
      if (!found || std::abs(q.s - g) < std::abs(out.quantization.s - g)) {
        out.bracket = piece;
        out.quantization = q;
      }
      found = true;
    } catch (const NoSignChange&) {
    } catch (const BranchJump&) {
    }
  }
  return found;
}

}  // namespace

EnergyLevel energy_closed_form(const MassModel& model, int n) {
  check_n(n);
  double e2 = 0.0;
  if (model.kind == MassKind::ExponentialRising) {
    // m0^2 - (m0 + k/2)^2 expanded, k = delta (2n + 1); no cancellation as delta -> 0.
    const double k = model.delta * (2.0 * n + 1.0);
    e2 = -k * (model.m0 + 0.25 * k);
  } else {
    e2 = sigmoid_reality_margin(model, n) / 16.0;
  }
  return make_level(model, n, e2);
}

NuLevel energy_via_nu(const MassModel& model, int n) {
  check_n(n);
  const EnergyLevel closed = energy_closed_form(model, n);
  const nu::HypergeometricForm form = hypergeometric_form(model);
  const double g = closed.spectral;
  if (!std::isfinite(g)) throw NoSignChange("closed-form spectral guess is not finite");

  NuLevel out;
  if (!quantize_around(form, n, g, out)) {
    for (int widen = 1;; ++widen) {
      const double f = std::ldexp(1.0, widen);
      out.bracket = {0.25 * g / f, 2.25 * g * f};
      try {
        out.quantization = nu::quantize(form, n, out.bracket);
        break;
      } catch (const NoSignChange&) {
        if (widen >= 10) throw;
      }
    }
  }

  const double s = out.quantization.s;
  out.level = make_level(model, n, spectral_to_e_squared(model, s));
  out.level.spectral = s;
  out.level.branch = out.quantization.branch;

  auto& d = out.discrepancy;
  d.nu_e_squared = out.level.e_squared;
  d.closed_e_squared = closed.e_squared;
  d.abs_diff = std::abs(d.nu_e_squared - d.closed_e_squared);
  d.rel_diff = d.abs_diff / std::max(1.0, std::abs(d.closed_e_squared));
  return out;
}

bool reality_predicate(const MassModel& model, int n) {
  check_n(n);
  if (model.kind != MassKind::SigmoidSaturating) {
    throw std::invalid_argument("reality predicate is defined for the sigmoid model only");
  }
  return sigmoid_reality_margin(model, n) > 0.0;
}

std::vector<double> delta_limit_probe(const MassModel& model, int n,
                                      std::span<const double> deltas) {
  std::vector<double> out;
  out.reserve(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw std::invalid_argument("deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("deltas must be strictly decreasing");
    }
    const auto m = MassModel::make(model.kind, model.m0, deltas[i]);
    out.push_back(std::sqrt(std::abs(energy_closed_form(m, n).e_squared)));
  }
  return out;
}

std::vector<SpectrumRow> spectrum_table(const MassModel& model, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  std::vector<SpectrumRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    SpectrumRow row;
    row.n = n;
    auto note = [&row](const std::string& what) {
      if (!row.error.empty()) row.error += "; ";
      row.error += what;
    };
    try {
      row.closed = energy_closed_form(model, n);
    } catch (const std::exception& e) {
      note(std::string("closed form: ") + e.what());
    }
    try {
      row.nu = energy_via_nu(model, n);
    } catch (const std::exception& e) {
      note(std::string("nu: ") + e.what());
    }
    if (model.kind == MassKind::SigmoidSaturating) {
      try {
        row.reality = reality_predicate(model, n);
      } catch (const std::exception& e) {
        note(std::string("reality predicate: ") + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nudirac
