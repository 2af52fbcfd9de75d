#pragma once

// Eigenfunction assembly for the two-component Dirac problem.
//
// phi = chi * y_n solves the Schroedinger-like equation; the upper
// component is f = sqrt(m) phi, the lower component g follows from
//
//   f' - i (E - V) f + i m g = 0,
//
// and the spinor is psi+ = (f + g)/2, psi- = (f - g)/(2i). Wave functions
// are unnormalized (a_n = 1).

#include <span>
#include <vector>

#include "nudirac/models.hpp"
#include "nudirac/nu_engine.hpp"
#include "nudirac/spectra.hpp"

namespace nudirac {

enum class EnergySign { Plus, Minus };

cplx energy_of(const EnergyLevel& level, EnergySign sign);

/// phi(z) = amplitude * chi(z) * y(z).
class Eigenfunction {
 public:
  /// phi^(k)(z) = exp(log_scale) * d_k; keeps values representable when chi
  /// itself over- or underflows.
  struct Jet {
    double log_scale = 0.0;
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
  };

  Eigenfunction(nu::PowerExpFactor chi, nu::ClassicalPolynomial y, double amplitude = 1.0);

  /// Built from the NU branch stored in the level (see energy_via_nu).
  /// Throws std::invalid_argument when the level carries no branch.
  static Eigenfunction from_level(const MassModel& model, const EnergyLevel& level);

  Jet jet(double z) const;
  double value(double z) const;
  double derivative(double z) const;
  double second_derivative(double z) const;

  const nu::PowerExpFactor& chi() const noexcept { return chi_; }
  const nu::ClassicalPolynomial& polynomial() const noexcept { return y_; }
  double amplitude() const noexcept { return amplitude_; }

 private:
  nu::PowerExpFactor chi_;
  nu::ClassicalPolynomial y_;
  double amplitude_ = 1.0;
};

struct WavefunctionSample {
  double x = 0.0;
  double z = 0.0;
  cplx phi;
  cplx f;
  cplx g;
  cplx psi_plus;
  cplx psi_minus;
};

// All z-based functions throw DomainError outside the model's open z-range.

double phi(const MassModel& model, const EnergyLevel& level, double z);
double upper_f(const MassModel& model, const EnergyLevel& level, double z);
/// Lower component from the first-order equation, with df/dx taken
/// analytically.
cplx lower_g(const MassModel& model, const EnergyLevel& level, double z,
             EnergySign sign = EnergySign::Plus);
/// Literal transcription of the printed lower components, kept for
/// discrepancy reporting. Throws DivisionByZero at a zero of the degree-n
/// polynomial in the ratio term.
cplx printed_g(const MassModel& model, const EnergyLevel& level, double z,
               EnergySign sign = EnergySign::Plus);
WavefunctionSample spinor(const MassModel& model, const EnergyLevel& level, double z,
                          EnergySign sign = EnergySign::Plus);

/// Same as spinor() for every x (in grid order).
std::vector<WavefunctionSample> sample_x_grid(const MassModel& model, const EnergyLevel& level,
                                              std::span<const double> xs,
                                              EnergySign sign = EnergySign::Plus);

/// Lower component evaluated with an explicit eigenfunction and energy.
cplx lower_g(const MassModel& model, const Eigenfunction& eig, cplx energy, double z);

}  // namespace nudirac
