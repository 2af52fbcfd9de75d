#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "nudirac/errors.hpp"
#include "nudirac/verify.hpp"

using namespace nudirac;

namespace {

const MassModel kRising = MassModel::make(MassKind::ExponentialRising, 1.0, 1.0);
const MassModel kSigmoid = MassModel::make(MassKind::SigmoidSaturating, 1.0, 1.0);
const MassModel kHeavy = MassModel::make(MassKind::SigmoidSaturating, 10.0, 0.1);

EnergyLevel level(const MassModel& m, int n) { return energy_via_nu(m, n).level; }

}  // namespace

TEST_CASE("grids") {
  const auto u = uniform_grid(0.0, 1.0, 5);
  CHECK(u == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(uniform_grid(0.0, 1.0, 0).empty());
  const auto zr = default_z_grid(kRising);
  CHECK(zr.size() == 200);
  CHECK(zr.front() == doctest::Approx(0.01));
  CHECK(zr.back() == doctest::Approx(9.99));
  const auto zs = default_z_grid(kSigmoid);
  CHECK(zs.front() == doctest::Approx(1e-3));
  CHECK(zs.back() == doctest::Approx(1.0 - 1e-3));
  const auto xs = default_x_grid(kHeavy);
  CHECK(xs.size() == 1001);
  CHECK(xs.front() == doctest::Approx(-100.0));
  CHECK(xs.back() == doctest::Approx(100.0));
  CHECK(resolved_x_grid(kSigmoid).size() == 1001);
  const auto rx = resolved_x_grid(kHeavy);
  CHECK(rx.size() >= 4001);
  CHECK(rx[1] - rx[0] <= 0.05 + 1e-12);
}

TEST_CASE("ODE residuals pass on pipeline solutions") {
  for (const auto& m : {kRising, kSigmoid, kHeavy}) {
    for (int n = 0; n <= 5; ++n) {
      const auto lv = level(m, n);
      const auto rz = residual_ode_z(m, lv, default_z_grid(m));
      CHECK(rz.equation_id == "ode-z");
      CHECK(rz.pass);
      CHECK(rz.max_relative <= 1e-8);
      CHECK(rz.grid.size() == 200);
      const auto rx = residual_ode_x(m, lv, default_x_grid(m, 200));
      CHECK(rx.pass);
      CHECK(rx.max_relative <= 1e-8);
      // Both charts agree on the verdict.
      CHECK(rz.pass == rx.pass);
    }
  }
}

TEST_CASE("ODE residuals reject wrong energies") {
  for (const auto& m : {kRising, kSigmoid, kHeavy}) {
    for (int n = 0; n <= 5; ++n) {
      const auto lv = level(m, n);
      CHECK_FALSE(residual_ode_z(m, lv.perturbed(1e-3), default_z_grid(m)).pass);
      auto shifted = lv;
      shifted.e_squared += 0.1;
      CHECK_FALSE(residual_ode_z(m, shifted, default_z_grid(m)).pass);
      CHECK_FALSE(residual_ode_x(m, lv.perturbed(1e-3), default_x_grid(m, 200)).pass);
    }
  }
}

TEST_CASE("ODE residual guards") {
  const auto lv = level(kSigmoid, 1);
  const std::vector<double> bad{0.5, 1.2};
  CHECK_THROWS_AS(residual_ode_z(kSigmoid, lv, bad), DomainError);
  const auto eig = Eigenfunction::from_level(kSigmoid, lv);
  const Eigenfunction zero(eig.chi(), eig.polynomial(), 0.0);
  CHECK_THROWS_AS(residual_ode_z(kSigmoid, zero, lv.e_squared, default_z_grid(kSigmoid)),
                  std::invalid_argument);
  CHECK_THROWS_AS(residual_ode_x(kSigmoid, zero, lv.e_squared, default_x_grid(kSigmoid, 20)),
                  std::invalid_argument);
}

TEST_CASE("Dirac system on pipeline solutions") {
  SUBCASE("resolved grid, n <= 5") {
    for (const auto& m : {kRising, kSigmoid, kHeavy}) {
      const auto xs = resolved_x_grid(m);
      for (int n = 0; n <= 5; ++n) {
        const auto lv = level(m, n);
        const auto samples = sample_x_grid(m, lv, xs);
        const auto r = residual_dirac_system(m, samples, lv.e_plus);
        CHECK(r.pass);
        CHECK(r.component_max.size() == 4);
        const auto rm = residual_dirac_system(m, sample_x_grid(m, lv, xs, EnergySign::Minus), lv.e_minus);
        CHECK(rm.pass);
      }
    }
  }
  SUBCASE("default grid, n <= 3") {
    for (const auto& m : {kRising, kSigmoid}) {
      const auto xs = default_x_grid(m);
      for (int n = 0; n <= 3; ++n) {
        const auto lv = level(m, n);
        CHECK(residual_dirac_system(m, sample_x_grid(m, lv, xs), lv.e_plus).pass);
      }
    }
  }
  SUBCASE("wrong energy fails") {
    const auto lv = level(kRising, 0);
    const auto samples = sample_x_grid(kRising, lv, default_x_grid(kRising));
    CHECK_FALSE(residual_dirac_system(kRising, samples, lv.e_plus * 1.01).pass);
  }
}

TEST_CASE("Dirac system degenerate input: f = g = 1, V = 0, E = m") {
  const double m = 2.0;
  std::vector<WavefunctionSample> s;
  for (int i = 0; i < 9; ++i) {
    WavefunctionSample w;
    w.x = 0.1 * i;
    w.f = 1.0;
    w.g = 1.0;
    w.psi_plus = 0.5 * (w.f + w.g);
    w.psi_minus = (w.f - w.g) / cplx(0.0, 2.0);
    s.push_back(w);
  }
  const DiracCoefficients c{[m](double) { return m; }, [](double) { return cplx(0.0, 0.0); }};
  const auto r = residual_dirac_system(c, s, cplx(m, 0.0));
  REQUIRE(r.component_max.size() == 4);
  CHECK(r.component_max[0].second == 0.0);
  CHECK(r.component_max[1].second == 0.0);
  // g = f gives psi- = 0.
  CHECK(s[0].psi_minus == cplx(0.0, 0.0));
}

TEST_CASE("Dirac system grid guards") {
  const auto lv = level(kRising, 0);
  const std::vector<double> four{-1.0, 0.0, 1.0, 2.0};
  CHECK_THROWS_AS(residual_dirac_system(kRising, sample_x_grid(kRising, lv, four), lv.e_plus),
                  GridTooCoarse);
  const std::vector<double> five{-2.0, -1.0, 0.0, 1.0, 2.0};
  CHECK_NOTHROW(residual_dirac_system(kRising, sample_x_grid(kRising, lv, five), lv.e_plus));
  const std::vector<double> uneven{-2.0, -1.0, 0.0, 1.5, 2.0};
  CHECK_THROWS_AS(residual_dirac_system(kRising, sample_x_grid(kRising, lv, uneven), lv.e_plus),
                  std::invalid_argument);
}

TEST_CASE("printed lower component swapped into the Dirac check") {
  const auto lv = level(kRising, 1);
  auto samples = sample_x_grid(kRising, lv, default_x_grid(kRising));
  for (auto& s : samples) {
    s.g = printed_g(kRising, lv, s.z);
    s.psi_plus = 0.5 * (s.f + s.g);
    s.psi_minus = (s.f - s.g) / cplx(0.0, 2.0);
  }
  const auto r = residual_dirac_system(kRising, samples, lv.e_plus);
  MESSAGE("printed g in the Dirac system, max relative residual: " << r.max_relative);
  CHECK(std::isfinite(r.max_relative));
}

TEST_CASE("weight identity") {
  SUBCASE("pipeline branches") {
    for (const auto& m : {kRising, kSigmoid, kHeavy}) {
      const auto sigma = hypergeometric_form(m).sigma;
      for (int n = 0; n <= 5; ++n) {
        const auto lv = level(m, n);
        CHECK(residual_weight_identity(*lv.branch, sigma, default_z_grid(m)).pass);
      }
    }
  }
  SUBCASE("Hermite weight") {
    const auto grid = uniform_grid(-3.0, 3.0, 61);
    const auto r = residual_weight_identity(Poly{1.0}, Poly{0.0, -2.0},
                                            [](double z) { return std::exp(-z * z); }, grid);
    CHECK(r.pass);
    CHECK(r.max_relative <= 1e-6);
  }
  SUBCASE("non-constant factor breaks the identity") {
    const auto grid = uniform_grid(-3.0, 3.0, 61);
    const auto r = residual_weight_identity(Poly{1.0}, Poly{0.0, -2.0},
                                            [](double z) { return std::exp(-z * z) * (2.0 + z); },
                                            grid);
    CHECK_FALSE(r.pass);
    const auto lv = level(kRising, 1);
    const auto rho = nu::weight_rho(*lv.branch, Poly{0.0, 1.0});
    const auto r2 = residual_weight_identity(Poly{0.0, 1.0}, lv.branch->tau,
                                             [&](double z) { return rho.value(z) * (1.0 + z * z); },
                                             default_z_grid(kRising));
    CHECK_FALSE(r2.pass);
    // A constant factor is harmless.
    const auto r3 = residual_weight_identity(Poly{0.0, 1.0}, lv.branch->tau,
                                             [&](double z) { return 7.0 * rho.value(z); },
                                             default_z_grid(kRising));
    CHECK(r3.pass);
  }
}

TEST_CASE("printed comparison report") {
  const auto lv = level(kSigmoid, 2);
  const auto r = printed_g_comparison(kSigmoid, lv, default_z_grid(kSigmoid));
  CHECK(r.equation_id == "printed-g");
  CHECK(r.grid.size() == 200);
  MESSAGE("sigmoid n=2 printed-g max relative deviation: " << r.max_relative);
}

TEST_CASE("report bookkeeping") {
  const auto lv = level(kRising, 2);
  const auto r = residual_ode_z(kRising, lv, default_z_grid(kRising), 1e-30);
  CHECK(r.tolerance == 1e-30);
  CHECK(r.residuals.size() == r.grid.size());
  CHECK(r.relative.size() == r.grid.size());
  double worst = 0.0;
  for (double v : r.relative) worst = std::max(worst, v);
  CHECK(r.max_relative == worst);
  CHECK(r.pass == (r.max_relative <= r.tolerance));
}

TEST_CASE("finite differences") {
  auto sq = [](double x) { return cplx(x * x, 0.0); };
  CHECK(std::abs(fd_derivative(sq, 3.0, 1) - 6.0) <= 1e-8);
  auto ex = [](double x) { return cplx(std::exp(x), 0.0); };
  CHECK(std::abs(fd_derivative(ex, 0.0, 2) - 1.0) <= 1e-6);
  CHECK_THROWS_AS(fd_derivative(ex, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(fd_derivative(ex, 0.0, 1, 0.0), std::invalid_argument);

  // Analytic derivative of phi as the oracle.
  const auto lv = level(kRising, 0);
  const auto eig = Eigenfunction::from_level(kRising, lv);
  auto p = [&](double z) { return cplx(eig.value(z), 0.0); };
  const double fd = fd_derivative(p, 1.0, 1).real();
  CHECK(std::abs(fd - eig.derivative(1.0)) <= 5e-6 * std::abs(eig.derivative(1.0)));

  // Observed order under step halving.
  auto sn = [](double x) { return cplx(std::sin(x), 0.0); };
  for (int order : {1, 2}) {
    const double x = 0.7;
    const double exact = order == 1 ? std::cos(x) : -std::sin(x);
    const double h = 0.1;
    const double e1 = std::abs(fd_derivative(sn, x, order, h).real() - exact);
    const double e2 = std::abs(fd_derivative(sn, x, order, h / 2).real() - exact);
    CHECK(std::log2(e1 / e2) >= 1.9);
  }
}
