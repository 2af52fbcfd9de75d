#include "nudirac/wavefun.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "nudirac/errors.hpp"
#include "nudirac/specfun.hpp"

namespace nudirac {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_in_range(const MassModel& model, double z) {
  if (!z_in_range(model, z)) {
    throw DomainError("z = " + std::to_string(z) + " outside the open range of " +
                      std::string(to_string(model.kind)));
  }
}

const nu::NuBranch& require_branch(const EnergyLevel& level) {
  if (!level.branch) {
    throw std::invalid_argument("energy level carries no NU branch; use energy_via_nu");
  }
  return *level.branch;
}

// f and g divided by exp(jet.log_scale).
struct Components {
  double log_scale = 0.0;
  double phi = 0.0;
  double f = 0.0;
  cplx g;
};

// Sigmoid model near z = 0 with chi = z^p0 (1 - z)^(-p1) and
// y = P_n^(a,b)(1 - 2z): g sqrt(m) / chi = c0 y + i delta z v(z) where
// c0 = E + i delta p0 and v = (p1 - p0) y + (1 - z) y'. The constant term of
// v vanishes for eigenfunctions, so v is summed from its Taylor
// coefficients at z = 0 instead of being formed as a difference.
std::optional<cplx> sigmoid_small_z_g(const MassModel& model, const Eigenfunction& eig,
                                      cplx energy, double z, double m) {
  const auto& chi = eig.chi();
  const auto& y = eig.polynomial();
  if (chi.c1 != 0.0 || chi.c2 != 0.0 || chi.roots.size() != 2 || chi.roots[0] != 0.0 ||
      chi.roots[1] != 1.0 || y.family != nu::ClassicalPolynomial::Family::Jacobi ||
      y.t0 != 1.0 || y.t1 != -2.0) {
    return std::nullopt;
  }
  const double p0 = chi.powers[0];
  const double slope = -chi.powers[1] - p0;
  const int n = y.n;
  const double a = y.p;
  const double b = y.q;

  // y = sum e_k z^k, e_0 = binom(n + a, n).
  std::vector<double> e(static_cast<std::size_t>(n) + 2, 0.0);
  e[0] = specfun::binomial(n + a, n);
  for (int k = 0; k < n; ++k) {
    const double den = (k + a + 1.0) * (k + 1.0);
    if (std::abs(k + a + 1.0) < 1e-12) return std::nullopt;
    e[k + 1] = e[k] * (k - n) * (k + n + a + b + 1.0) / den;
  }
  double ys = 0.0;
  double v = 0.0;
  for (int k = n; k >= 0; --k) {
    const double vk = slope * e[k] + (k + 1.0) * e[k + 1] - k * e[k];
    ys = ys * z + e[k];
    v = v * z + vk;
  }
  const double amp = eig.amplitude();
  const cplx c0 = energy + kI * model.delta * p0;
  return amp * (c0 * ys + kI * model.delta * z * v) / std::sqrt(m);
}

Components components(const MassModel& model, const Eigenfunction& eig, cplx energy, double z) {
  const auto j = eig.jet(z);
  const double m = mass_at_z(model, z);
  const double sqrt_m = std::sqrt(m);
  const double f = sqrt_m * j.d0;
  if (model.kind == MassKind::SigmoidSaturating && z < 0.5) {
    if (auto g = sigmoid_small_z_g(model, eig, energy, z, m)) return {j.log_scale, j.d0, f, *g};
  }
  const double f_z = sqrt_m * (j.d1 + 0.5 * model.m0 / m * j.d0);
  const double f_x = dz_dx(model, z) * f_z;
  const cplx v = potential_at_z(model, z);
  const cplx g = (kI * (energy - v) * f - f_x) / (kI * m);
  return {j.log_scale, j.d0, f, g};
}

}  // namespace

cplx energy_of(const EnergyLevel& level, EnergySign sign) {
  return sign == EnergySign::Plus ? level.e_plus : level.e_minus;
}

Eigenfunction::Eigenfunction(nu::PowerExpFactor chi, nu::ClassicalPolynomial y, double amplitude)
    : chi_(std::move(chi)), y_(y), amplitude_(amplitude) {}

Eigenfunction Eigenfunction::from_level(const MassModel& model, const EnergyLevel& level) {
  const nu::NuBranch& branch = require_branch(level);
  const Poly sigma = hypergeometric_form(model).sigma;
  return Eigenfunction(nu::chi_factor(branch, sigma),
                       nu::rodrigues_polynomial(branch, sigma, level.n));
}

Eigenfunction::Jet Eigenfunction::jet(double z) const {
  const double l1 = chi_.log_derivative(z);
  const double l2 = chi_.log_second_derivative(z);
  const double y0 = y_.value(z);
  const double y1 = y_.derivative(z);
  const double y2 = y_.second_derivative(z);
  Jet j;
  j.log_scale = chi_.log_abs(z);
  j.d0 = amplitude_ * y0;
  j.d1 = amplitude_ * (y1 + l1 * y0);
  j.d2 = amplitude_ * (y2 + 2.0 * l1 * y1 + (l2 + l1 * l1) * y0);
  return j;
}

double Eigenfunction::value(double z) const {
  const auto j = jet(z);
  return std::exp(j.log_scale) * j.d0;
}

double Eigenfunction::derivative(double z) const {
  const auto j = jet(z);
  return std::exp(j.log_scale) * j.d1;
}

double Eigenfunction::second_derivative(double z) const {
  const auto j = jet(z);
  return std::exp(j.log_scale) * j.d2;
}

double phi(const MassModel& model, const EnergyLevel& level, double z) {
  require_in_range(model, z);
  return Eigenfunction::from_level(model, level).value(z);
}

double upper_f(const MassModel& model, const EnergyLevel& level, double z) {
  return std::sqrt(mass_at_z(model, z)) * phi(model, level, z);
}

cplx lower_g(const MassModel& model, const Eigenfunction& eig, cplx energy, double z) {
  require_in_range(model, z);
  const auto c = components(model, eig, energy, z);
  return std::exp(c.log_scale) * c.g;
}

cplx lower_g(const MassModel& model, const EnergyLevel& level, double z, EnergySign sign) {
  return lower_g(model, Eigenfunction::from_level(model, level), energy_of(level, sign), z);
}

cplx printed_g(const MassModel& model, const EnergyLevel& level, double z, EnergySign sign) {
  require_in_range(model, z);
  const nu::NuBranch& branch = require_branch(level);
  const cplx e = energy_of(level, sign);
  const int n = level.n;
  const double delta = model.delta;
  const double m0 = model.m0;

  if (model.kind == MassKind::ExponentialRising) {
    // The exponent of z in chi is the signed square root of epsilon.
    const double r = branch.pi(0.0);
    const double a = model.alpha();
    const double ln = specfun::laguerre(n, 2.0 * r, z);
    if (ln == 0.0) throw DivisionByZero("Laguerre factor vanishes at z = " + std::to_string(z));
    const double lm = specfun::laguerre(n - 1, 2.0 * r, z);
    const double pre = std::exp(-a * z) * std::pow(z, r) * ln / std::sqrt(m0 * (1.0 + z));
    const cplx bracket = r / z - a - lm / ln + e;
    return pre * (-kI * delta * z) * bracket;
  }

  // chi = z^Et (1 - z)^(-M) with Et = pi(0) and M = pi(1).
  const double et = branch.pi(0.0);
  const double mm = branch.pi(1.0);
  const double x = 1.0 - 2.0 * z;
  const double pn = specfun::jacobi(n, 2.0 * et, -2.0 * mm, x);
  if (pn == 0.0) throw DivisionByZero("Jacobi factor vanishes at z = " + std::to_string(z));
  const double pm = specfun::jacobi(n - 1, 1.0 + 2.0 * et, 1.0 - 2.0 * mm, x);
  const double w = 1.0 - z;
  const double pre = std::pow(z, et - 0.5) * std::pow(w, -mm) * pn;
  const double inner = 0.5 * w + et * w + mm * z - z * w * (n + 1.0 + 2.0 * et - 2.0 * mm) * pm / pn;
  const double sm = std::sqrt(m0);
  return pre * (kI * delta / sm * inner + e / sm);
}

namespace {

WavefunctionSample make_sample(const MassModel& model, const Eigenfunction& eig, cplx energy,
                               double x, double z) {
  require_in_range(model, z);
  const auto c = components(model, eig, energy, z);
  const double scale = std::exp(c.log_scale);
  WavefunctionSample s;
  s.x = x;
  s.z = z;
  s.phi = scale * c.phi;
  s.f = scale * c.f;
  s.g = scale * c.g;
  s.psi_plus = 0.5 * (s.f + s.g);
  s.psi_minus = (s.f - s.g) / (2.0 * kI);
  return s;
}

}  // namespace

WavefunctionSample spinor(const MassModel& model, const EnergyLevel& level, double z,
                          EnergySign sign) {
  require_in_range(model, z);
  return make_sample(model, Eigenfunction::from_level(model, level), energy_of(level, sign),
                     z_to_x(model, z), z);
}

std::vector<WavefunctionSample> sample_x_grid(const MassModel& model, const EnergyLevel& level,
                                              std::span<const double> xs, EnergySign sign) {
  const Eigenfunction eig = Eigenfunction::from_level(model, level);
  const cplx e = energy_of(level, sign);
  std::vector<WavefunctionSample> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(make_sample(model, eig, e, x, x_to_z(model, x)));
  return out;
}

}  // namespace nudirac
