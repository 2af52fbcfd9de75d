#pragma once

// Numerical oracles: residuals of the second-order equations in both
// charts, of the first-order Dirac system and of the NU weight identity.
//
// Every report uses relative = |residual| / max(1, scale) with scale the
// largest magnitude among the individual terms assembled at that point.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nudirac/models.hpp"
#include "nudirac/nu_engine.hpp"
#include "nudirac/spectra.hpp"
#include "nudirac/wavefun.hpp"

namespace nudirac {

inline constexpr double kOdeTolerance = 1e-8;
inline constexpr double kDiracTolerance = 5e-6;
inline constexpr double kWeightTolerance = 1e-6;

struct ResidualReport {
  std::string equation_id;
  std::vector<double> grid;
  /// |residual| per point; NaN where the point was skipped.
  std::vector<double> residuals;
  std::vector<double> relative;
  double max_relative = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t skipped = 0;
  /// Largest relative residual of each sub-equation, when there are several.
  std::vector<std::pair<std::string, double>> component_max;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);
/// `points` interior points of the z-range with an endpoint margin of 1e-3
/// of the range; the rising model uses (0, 10].
std::vector<double> default_z_grid(const MassModel& model, std::size_t points = 200);
/// [-10/delta, 10/delta].
std::vector<double> default_x_grid(const MassModel& model, std::size_t points = 1001);
/// Same range as default_x_grid with the step capped at 0.5 / max(m0, delta)
/// (never fewer than 1001 points), so that finite differences resolve the
/// e^(+-m0 x) scale of heavy-mass solutions.
std::vector<double> resolved_x_grid(const MassModel& model);

/// phi'' + p phi' + q phi = 0 in z with analytic derivatives of phi.
/// Throws DomainError for out-of-range points and std::invalid_argument for
/// phi identically zero.
ResidualReport residual_ode_z(const MassModel& model, const EnergyLevel& level,
                              std::span<const double> z_grid, double tolerance = kOdeTolerance);
ResidualReport residual_ode_z(const MassModel& model, const Eigenfunction& eig, double e_squared,
                              std::span<const double> z_grid, double tolerance = kOdeTolerance);

/// phi_xx + (E^2 - m^2) phi = 0 with phi(x) = phi(x_to_z(x)).
ResidualReport residual_ode_x(const MassModel& model, const EnergyLevel& level,
                              std::span<const double> x_grid, double tolerance = kOdeTolerance);
ResidualReport residual_ode_x(const MassModel& model, const Eigenfunction& eig, double e_squared,
                              std::span<const double> x_grid, double tolerance = kOdeTolerance);

struct DiracCoefficients {
  std::function<double(double)> mass;
  std::function<cplx(double)> potential;
};

/// f' - i(E-V) f + i m g, g' + i(E-V) g - i m f, psi+' + (m + E - V) psi-,
/// psi-' + (m - E + V) psi+ on a uniform x-grid, with central differences
/// (7-point stencil, 5-point for grids of 5 or 6 points). Points whose
/// stencil contains non-finite values are skipped. Throws GridTooCoarse for
/// fewer than 5 samples and std::invalid_argument for a non-uniform grid.
ResidualReport residual_dirac_system(const DiracCoefficients& coeffs,
                                     std::span<const WavefunctionSample> samples, cplx energy,
                                     double tolerance = kDiracTolerance);
ResidualReport residual_dirac_system(const MassModel& model,
                                     std::span<const WavefunctionSample> samples, cplx energy,
                                     double tolerance = kDiracTolerance);

/// (sigma rho)' - tau rho = 0 with rho from the branch; derivative by
/// central differences.
ResidualReport residual_weight_identity(const nu::NuBranch& branch, const Poly& sigma,
                                        std::span<const double> grid,
                                        double tolerance = kWeightTolerance);
ResidualReport residual_weight_identity(const Poly& sigma, const Poly& tau,
                                        const std::function<double(double)>& rho,
                                        std::span<const double> grid,
                                        double tolerance = kWeightTolerance);

/// Printed lower component against lower_g; relative deviation per point.
/// Informational: points at polynomial roots are skipped.
ResidualReport printed_g_comparison(const MassModel& model, const EnergyLevel& level,
                                    std::span<const double> z_grid,
                                    EnergySign sign = EnergySign::Plus,
                                    double tolerance = kDiracTolerance);

/// Central differences, truncation error O(h^2). Default step
/// h = 1e-6 max(1, |x|) for order 1 and 1e-4 max(1, |x|) for order 2.
cplx fd_derivative(const std::function<cplx(double)>& fn, double x, int order);
cplx fd_derivative(const std::function<cplx(double)>& fn, double x, int order, double h);

}  // namespace nudirac
