#include "nudirac/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nudirac/errors.hpp"

namespace nudirac {

namespace {

// 1 / (1 + e^{-t}) without overflow.
double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(MassKind kind) {
  return kind == MassKind::ExponentialRising ? "exp-rising" : "sigmoid";
}

MassKind parse_mass_kind(std::string_view text) {
  if (text == "exp-rising") return MassKind::ExponentialRising;
  if (text == "sigmoid") return MassKind::SigmoidSaturating;
  throw std::invalid_argument("unknown model '" + std::string(text) +
                              "' (expected exp-rising or sigmoid)");
}

MassModel MassModel::make(MassKind kind, double m0, double delta) {
  if (!(m0 > 0.0) || !std::isfinite(m0)) throw std::invalid_argument("m0 must be positive and finite");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be positive and finite");
  }
  return MassModel{kind, m0, delta};
}

double mass_at(const MassModel& model, double x) {
  const double t = model.delta * x;
  if (model.kind == MassKind::ExponentialRising) {
    if (t < -kAsymptoticExponent) return model.m0 * std::exp(-t);
    return model.m0 * (1.0 + std::exp(-t));
  }
  if (t < -kAsymptoticExponent) return model.m0 * std::exp(t);
  return model.m0 * logistic(t);
}

double mass_at_z(const MassModel& model, double z) {
  return model.kind == MassKind::ExponentialRising ? model.m0 * (1.0 + z) : model.m0 * z;
}

double effective_potential(const MassModel& model, double x) {
  const double m = mass_at(model, x);
  return m * m;
}

cplx potential_at(const MassModel& model, double x) {
  // m'/m = -delta / (1 + e^{delta x}) for the rising profile and
  // +delta / (1 + e^{delta x}) for the sigmoid.
  const double w = logistic(-model.delta * x);
  const double sign = model.kind == MassKind::ExponentialRising ? -1.0 : 1.0;
  return {0.0, sign * 0.5 * model.delta * w};
}

cplx potential_at_z(const MassModel& model, double z) {
  if (model.kind == MassKind::ExponentialRising) {
    return {0.0, -0.5 * model.delta * z / (1.0 + z)};
  }
  return {0.0, 0.5 * model.delta * (1.0 - z)};
}

double x_to_z(const MassModel& model, double x) {
  const double t = model.delta * x;
  return model.kind == MassKind::ExponentialRising ? std::exp(-t) : logistic(t);
}

bool z_in_range(const MassModel& model, double z) {
  if (model.kind == MassKind::ExponentialRising) return z > 0.0 && std::isfinite(z);
  return z > 0.0 && z < 1.0;
}

double z_to_x(const MassModel& model, double z) {
  if (!z_in_range(model, z)) {
    throw DomainError("z = " + std::to_string(z) + " outside the open range of " +
                      std::string(to_string(model.kind)));
  }
  if (model.kind == MassKind::ExponentialRising) return -std::log(z) / model.delta;
  return std::log(z / (1.0 - z)) / model.delta;
}

double dz_dx(const MassModel& model, double z) {
  return model.kind == MassKind::ExponentialRising ? -model.delta * z
                                                   : model.delta * z * (1.0 - z);
}

double d2z_dx2(const MassModel& model, double z) {
  const double d2 = model.delta * model.delta;
  return model.kind == MassKind::ExponentialRising ? d2 * z
                                                   : d2 * z * (1.0 - z) * (1.0 - 2.0 * z);
}

nu::HypergeometricForm hypergeometric_form(const MassModel& model) {
  const double a = model.alpha();
  const double a1 = a * a;
  if (model.kind == MassKind::ExponentialRising) {
    const double a2 = 2.0 * a * a;
    return nu::HypergeometricForm::make(Poly{1.0}, Poly{0.0, 1.0},
                                        {Poly{0.0, -a2, -a1}, Poly{}, Poly{-1.0}},
                                        "signed sqrt(epsilon)");
  }
  return nu::HypergeometricForm::make(Poly{1.0, -2.0}, Poly{0.0, 1.0, -1.0},
                                      {Poly{0.0, 0.0, -a1}, Poly{-1.0}, Poly{}},
                                      "tilde E squared");
}

double spectral_to_e_squared(const MassModel& model, double s) {
  const double d2 = model.delta * model.delta;
  if (model.kind == MassKind::ExponentialRising) {
    const double a = model.alpha();
    return d2 * (a * a - s * s);
  }
  return -d2 * s;
}

double SchrodingerForm::tilde_e_squared() const {
  const double d2 = model.delta * model.delta;
  return model.kind == MassKind::ExponentialRising ? e_squared / d2 : -e_squared / d2;
}

double SchrodingerForm::z_first(double z) const {
  if (model.kind == MassKind::ExponentialRising) return 1.0 / z;
  return (1.0 - 2.0 * z) / (z * (1.0 - z));
}

double SchrodingerForm::z_zeroth(double z) const {
  const double a = model.alpha();
  const double a2 = a * a;
  const double te2 = tilde_e_squared();
  if (model.kind == MassKind::ExponentialRising) {
    return (te2 - a2 - 2.0 * a2 * z - a2 * z * z) / (z * z);
  }
  const double w = 1.0 - z;
  return -(te2 / (z * z * w * w) + a2 / (w * w));
}

double SchrodingerForm::x_zeroth(double x) const {
  return e_squared - effective_potential(model, x);
}

double SchrodingerForm::x_zeroth_at_z(double z) const {
  const double m = mass_at_z(model, z);
  return e_squared - m * m;
}

SchrodingerForm schrodinger_residual_form(const MassModel& model, double e_squared) {
  return SchrodingerForm{model, e_squared};
}

}  // namespace nudirac
