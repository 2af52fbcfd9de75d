#include "nudirac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nudirac/errors.hpp"

namespace nudirac {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr cplx kI{0.0, 1.0};

ResidualReport start(std::string id, double tolerance) {
  ResidualReport r;
  r.equation_id = std::move(id);
  r.tolerance = tolerance;
  return r;
}

void push(ResidualReport& r, double at, double residual, double relative) {
  r.grid.push_back(at);
  r.residuals.push_back(residual);
  r.relative.push_back(relative);
}

void skip(ResidualReport& r, double at) {
  push(r, at, kNaN, kNaN);
  ++r.skipped;
}

void finish(ResidualReport& r) {
  double worst = 0.0;
  std::size_t used = 0;
  bool bad = false;
  for (double v : r.relative) {
    if (std::isnan(v)) continue;
    ++used;
    if (!std::isfinite(v)) bad = true;
    worst = std::max(worst, v);
  }
  r.max_relative = used == 0 ? kNaN : worst;
  r.pass = used > 0 && !bad && worst <= r.tolerance;
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

void require_nonzero(const Eigenfunction& eig) {
  if (eig.amplitude() == 0.0) throw std::invalid_argument("phi is identically zero");
}

void require_in_range(const MassModel& model, double z) {
  if (!z_in_range(model, z)) {
    throw DomainError("grid point z = " + std::to_string(z) + " outside the open range of " +
                      std::string(to_string(model.kind)));
  }
}

// Residual of a reduced equation (everything divided by exp(log_scale)):
// relative = |res| / max(1, scale) in unscaled units.
void push_reduced(ResidualReport& r, double at, double log_scale, double res, double scale) {
  const double unit = std::exp(-log_scale);
  push(r, at, std::abs(res) * std::exp(log_scale), std::abs(res) / std::max(unit, scale));
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g;
  if (points == 0) return g;
  if (points == 1) return {lo};
  g.reserve(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i + 1 < points; ++i) g.push_back(lo + static_cast<double>(i) * step);
  g.push_back(hi);
  return g;
}

std::vector<double> default_z_grid(const MassModel& model, std::size_t points) {
  const double hi = model.kind == MassKind::ExponentialRising ? 10.0 : 1.0;
  const double margin = 1e-3 * hi;
  return uniform_grid(margin, hi - margin, points);
}

std::vector<double> default_x_grid(const MassModel& model, std::size_t points) {
  const double r = 10.0 / model.delta;
  return uniform_grid(-r, r, points);
}

std::vector<double> resolved_x_grid(const MassModel& model) {
  const double span = 20.0 / model.delta;
  const double step = 0.5 / std::max(model.m0, model.delta);
  const auto intervals = static_cast<std::size_t>(std::ceil(span / step));
  return default_x_grid(model, std::max<std::size_t>(1001, intervals + 1));
}

ResidualReport residual_ode_z(const MassModel& model, const Eigenfunction& eig, double e_squared,
                              std::span<const double> z_grid, double tolerance) {
  require_nonzero(eig);
  const SchrodingerForm form = schrodinger_residual_form(model, e_squared);
  auto r = start("ode-z", tolerance);
  for (double z : z_grid) {
    require_in_range(model, z);
    const auto j = eig.jet(z);
    const double t2 = j.d2;
    const double t1 = form.z_first(z) * j.d1;
    const double t0 = form.z_zeroth(z) * j.d0;
    push_reduced(r, z, j.log_scale, t2 + t1 + t0, max_abs({t2, t1, t0}));
  }
  finish(r);
  return r;
}

ResidualReport residual_ode_z(const MassModel& model, const EnergyLevel& level,
                              std::span<const double> z_grid, double tolerance) {
  return residual_ode_z(model, Eigenfunction::from_level(model, level), level.e_squared, z_grid,
                        tolerance);
}

ResidualReport residual_ode_x(const MassModel& model, const Eigenfunction& eig, double e_squared,
                              std::span<const double> x_grid, double tolerance) {
  require_nonzero(eig);
  auto r = start("ode-x", tolerance);
  for (double x : x_grid) {
    if (!std::isfinite(x)) throw DomainError("grid point x is not finite");
    const double z = x_to_z(model, x);
    require_in_range(model, z);
    const auto j = eig.jet(z);
    const double zx = dz_dx(model, z);
    const double m = mass_at_z(model, z);
    const double phi_xx = zx * zx * j.d2 + d2z_dx2(model, z) * j.d1;
    const double te = e_squared * j.d0;
    const double tm = m * m * j.d0;
    push_reduced(r, x, j.log_scale, phi_xx + te - tm, max_abs({phi_xx, te, tm}));
  }
  finish(r);
  return r;
}

ResidualReport residual_ode_x(const MassModel& model, const EnergyLevel& level,
                              std::span<const double> x_grid, double tolerance) {
  return residual_ode_x(model, Eigenfunction::from_level(model, level), level.e_squared, x_grid,
                        tolerance);
}

ResidualReport residual_dirac_system(const DiracCoefficients& coeffs,
                                     std::span<const WavefunctionSample> samples, cplx energy,
                                     double tolerance) {
  const std::size_t n = samples.size();
  if (n < 5) throw GridTooCoarse("need at least 5 samples, got " + std::to_string(n));
  const double x0 = samples.front().x;
  const double h = (samples.back().x - x0) / static_cast<double>(n - 1);
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid must be increasing");
  const double slack = 1e-9 * (std::abs(x0) + std::abs(samples.back().x) + h);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(samples[i].x - (x0 + static_cast<double>(i) * h)) > slack) {
      throw std::invalid_argument("Dirac residual needs a uniform grid");
    }
  }

  const bool wide = n >= 7;
  const std::size_t half = wide ? 3 : 2;
  auto deriv = [&](std::size_t i, cplx WavefunctionSample::*field) {
    auto at = [&](long k) { return samples[static_cast<std::size_t>(static_cast<long>(i) + k)].*field; };
    if (wide) {
      return (-at(-3) + 9.0 * at(-2) - 45.0 * at(-1) + 45.0 * at(1) - 9.0 * at(2) + at(3)) /
             (60.0 * h);
    }
    return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
  };
  auto finite = [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };

  auto r = start("dirac-system", tolerance);
  std::array<double, 4> worst{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = half; i + half < n; ++i) {
    const double x = samples[i].x;
    bool ok = true;
    for (std::size_t k = i - half; k <= i + half; ++k) {
      const auto& s = samples[k];
      ok = ok && finite(s.f) && finite(s.g) && finite(s.psi_plus) && finite(s.psi_minus);
    }
    if (!ok) {
      skip(r, x);
      continue;
    }
    const auto& s = samples[i];
    const double m = coeffs.mass(x);
    const cplx v = coeffs.potential(x);
    const cplx ev = energy - v;
    const cplx df = deriv(i, &WavefunctionSample::f);
    const cplx dg = deriv(i, &WavefunctionSample::g);
    const cplx dp = deriv(i, &WavefunctionSample::psi_plus);
    const cplx dm = deriv(i, &WavefunctionSample::psi_minus);

    const std::array<std::array<cplx, 3>, 4> terms{{
        {df, -kI * ev * s.f, kI * m * s.g},
        {dg, kI * ev * s.g, -kI * m * s.f},
        {dp, (m + energy - v) * s.psi_minus, 0.0},
        {dm, (m - energy + v) * s.psi_plus, 0.0},
    }};
    double res_max = 0.0;
    double rel_max = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
      const auto& t = terms[e];
      const double res = std::abs(t[0] + t[1] + t[2]);
      const double scale = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
      const double rel = res / std::max(1.0, scale);
      worst[e] = std::max(worst[e], rel);
      res_max = std::max(res_max, res);
      rel_max = std::max(rel_max, rel);
    }
    push(r, x, res_max, rel_max);
  }
  r.component_max = {{"f-g first", worst[0]},
                     {"f-g second", worst[1]},
                     {"psi first", worst[2]},
                     {"psi second", worst[3]}};
  finish(r);
  return r;
}

ResidualReport residual_dirac_system(const MassModel& model,
                                     std::span<const WavefunctionSample> samples, cplx energy,
                                     double tolerance) {
  DiracCoefficients c{[&model](double x) { return mass_at(model, x); },
                      [&model](double x) { return potential_at(model, x); }};
  return residual_dirac_system(c, samples, energy, tolerance);
}

namespace {

// Distance from z to the nearest root of sigma, capped at max(1, |z|).
double root_distance(const Poly& sigma, double z) {
  double d = std::max(1.0, std::abs(z));
  const double a = sigma.coeff(2), b = sigma.coeff(1), c = sigma.coeff(0);
  if (sigma.degree() == 1) {
    d = std::min(d, std::abs(z + c / b));
  } else if (sigma.degree() == 2) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      d = std::min({d, std::abs(z - (-b + sq) / (2.0 * a)), std::abs(z - (-b - sq) / (2.0 * a))});
    }
  }
  return d;
}

// (sigma rho)'/rho - tau = sigma * d/dz log|sigma rho| - tau, with the
// logarithmic derivative taken by central differences.
template <typename LogRho>
ResidualReport weight_identity(const Poly& sigma, const Poly& tau, LogRho log_rho,
                               std::span<const double> grid, double tolerance) {
  auto r = start("weight-identity", tolerance);
  auto log_sr = [&](double t) -> cplx {
    return std::log(std::abs(sigma(t))) + log_rho(t);
  };
  for (double z : grid) {
    const double lr = log_rho(z);
    const double sz = sigma(z);
    if (sz == 0.0 || !std::isfinite(lr)) {
      skip(r, z);
      continue;
    }
    const double h = 1e-4 * root_distance(sigma, z);
    const double dlog = fd_derivative(log_sr, z, 1, h).real();
    const double t1 = sz * dlog;
    const double t0 = tau(z);
    push_reduced(r, z, lr, t1 - t0, max_abs({t1, t0}));
  }
  finish(r);
  return r;
}

}  // namespace

ResidualReport residual_weight_identity(const nu::NuBranch& branch, const Poly& sigma,
                                        std::span<const double> grid, double tolerance) {
  const nu::PowerExpFactor rho = nu::weight_rho(branch, sigma);
  return weight_identity(sigma, branch.tau, [&rho](double t) { return rho.log_abs(t); }, grid,
                         tolerance);
}

ResidualReport residual_weight_identity(const Poly& sigma, const Poly& tau,
                                        const std::function<double(double)>& rho,
                                        std::span<const double> grid, double tolerance) {
  return weight_identity(sigma, tau, [&rho](double t) { return std::log(std::abs(rho(t))); },
                         grid, tolerance);
}

ResidualReport printed_g_comparison(const MassModel& model, const EnergyLevel& level,
                                    std::span<const double> z_grid, EnergySign sign,
                                    double tolerance) {
  const Eigenfunction eig = Eigenfunction::from_level(model, level);
  const cplx e = energy_of(level, sign);
  auto r = start("printed-g", tolerance);
  for (double z : z_grid) {
    const cplx derived = lower_g(model, eig, e, z);
    cplx printed;
    try {
      printed = printed_g(model, level, z, sign);
    } catch (const DivisionByZero&) {
      skip(r, z);
      continue;
    }
    const double dev = std::abs(printed - derived);
    const double scale = std::max(std::abs(printed), std::abs(derived));
    push(r, z, dev, dev / std::max(1.0, scale));
  }
  finish(r);
  return r;
}

cplx fd_derivative(const std::function<cplx(double)>& fn, double x, int order, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  if (order == 1) return (fn(x + h) - fn(x - h)) / (2.0 * h);
  if (order == 2) return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
  throw std::invalid_argument("fd_derivative supports order 1 or 2");
}

cplx fd_derivative(const std::function<cplx(double)>& fn, double x, int order) {
  const double base = std::max(1.0, std::abs(x));
  return fd_derivative(fn, x, order, (order == 2 ? 1e-4 : 1e-6) * base);
}

}  // namespace nudirac
