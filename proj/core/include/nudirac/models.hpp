#pragma once

// Position-dependent mass profiles, the complex potentials they induce
// through V = i m' / (2m), and the reduction of the Schroedinger-like
// equation phi'' + (E^2 - m^2) phi = 0 to hypergeometric form.
//
//   ExponentialRising:  m(x) = m0 (1 + e^{-delta x}),  z = e^{-delta x}
//   SigmoidSaturating:  m(x) = m0 / (1 + e^{-delta x}), z = 1 / (1 + e^{-delta x})
//
// Natural units (hbar = c = 1); alpha = m0 / delta is dimensionless.

#include <complex>
#include <string>
#include <string_view>

#include "nudirac/nu_engine.hpp"

namespace nudirac {

using cplx = std::complex<double>;

enum class MassKind { ExponentialRising, SigmoidSaturating };

std::string_view to_string(MassKind kind);
/// Parses "exp-rising" / "sigmoid"; throws std::invalid_argument otherwise.
MassKind parse_mass_kind(std::string_view text);

struct MassModel {
  MassKind kind = MassKind::ExponentialRising;
  double m0 = 1.0;
  double delta = 1.0;

  /// Throws std::invalid_argument unless m0 > 0 and delta > 0 (both finite).
  static MassModel make(MassKind kind, double m0, double delta);

  double alpha() const noexcept { return m0 / delta; }
};

/// |delta x| beyond which the exponentials switch to their asymptotic forms.
inline constexpr double kAsymptoticExponent = 700.0;

double mass_at(const MassModel& model, double x);
/// Mass expressed in the z coordinate: m0 (1 + z) or m0 z.
double mass_at_z(const MassModel& model, double z);
/// V_eff(x) = m(x)^2.
double effective_potential(const MassModel& model, double x);
/// V(x) = i m'(x) / (2 m(x)); purely imaginary for real x.
cplx potential_at(const MassModel& model, double x);
/// The same potential written in z.
cplx potential_at_z(const MassModel& model, double z);

double x_to_z(const MassModel& model, double x);
/// Throws DomainError outside (0, inf) for ExponentialRising and (0, 1) for
/// SigmoidSaturating.
double z_to_x(const MassModel& model, double z);
bool z_in_range(const MassModel& model, double z);

/// dz/dx and d^2z/dx^2 expressed in z.
double dz_dx(const MassModel& model, double z);
double d2z_dx2(const MassModel& model, double z);

/// ExponentialRising: tau~ = 1, sigma = z, sigma~ = -a1 z^2 - a2 z - s^2 with
/// a1 = alpha^2, a2 = 2 alpha^2 and s the signed square root of epsilon.
/// SigmoidSaturating: tau~ = 1 - 2z, sigma = z(1 - z), sigma~ = -s - alpha^2 z^2
/// with s = Etilde^2 = -E^2 / delta^2.
nu::HypergeometricForm hypergeometric_form(const MassModel& model);

/// E^2 for a value of the spectral parameter of hypergeometric_form.
double spectral_to_e_squared(const MassModel& model, double s);

/// Coefficients of the Schroedinger-like equation at fixed E^2.
///
/// z chart: phi'' + z_first(z) phi' + z_zeroth(z) phi = 0.
/// x chart: phi'' + x_zeroth(x) phi = 0.
struct SchrodingerForm {
  MassModel model;
  double e_squared = 0.0;

  /// E^2 / delta^2 for ExponentialRising, -E^2 / delta^2 for SigmoidSaturating.
  double tilde_e_squared() const;
  double z_first(double z) const;
  double z_zeroth(double z) const;
  double x_zeroth(double x) const;
  /// x-chart zeroth-order coefficient evaluated from z (keeps both charts
  /// on the same rounded point).
  double x_zeroth_at_z(double z) const;
};

SchrodingerForm schrodinger_residual_form(const MassModel& model, double e_squared);

}  // namespace nudirac
