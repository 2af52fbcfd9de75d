#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nudirac/specfun.hpp"
#include "oracles.hpp"

using namespace nudirac;
namespace sf = nudirac::specfun;

namespace {

double rel_err(double got, long double want) {
  const long double d = std::abs(static_cast<long double>(got) - want);
  return static_cast<double>(d / std::max(std::abs(want), 1e-300L));
}

double central(auto fn, double x, double h) { return (fn(x + h) - fn(x - h)) / (2.0 * h); }

}  // namespace

TEST_CASE("laguerre low degrees") {
  for (double a : {-2.5, 0.0, 0.3, 4.0}) {
    for (double z : {-1.0, 0.0, 0.7, 3.0}) {
      CHECK(sf::laguerre(0, a, z) == 1.0);
      CHECK(sf::laguerre(1, a, z) == doctest::Approx(1.0 + a - z).epsilon(1e-15));
    }
  }
  CHECK(sf::laguerre(-1, 0.5, 1.0) == 0.0);
}

TEST_CASE("laguerre matches the series and the frozen value") {
  CHECK(sf::laguerre(3, 0.5, 2.0) == doctest::Approx(oracle::frozen::kLaguerre3Half2).epsilon(1e-14));
  CHECK(sf::laguerre_series(3, 0.5, 2.0) == doctest::Approx(oracle::frozen::kLaguerre3Half2).epsilon(1e-14));
  CHECK(rel_err(sf::laguerre(3, 0.5, 2.0), oracle::laguerre(3, 0.5L, 2.0L)) < 1e-14);
}

TEST_CASE("laguerre accepts complex arguments on the real axis") {
  const std::complex<double> z(1.7, 0.0);
  const auto v = sf::laguerre(5, 1.2, z);
  CHECK(v.imag() == 0.0);
  CHECK(v.real() == doctest::Approx(sf::laguerre(5, 1.2, 1.7)).epsilon(1e-15));
}

TEST_CASE("laguerre derivative") {
  CHECK(sf::laguerre_derivative(0, 1.0, 2.0) == 0.0);
  for (double a : {-0.5, 2.0}) CHECK(sf::laguerre_derivative(1, a, 3.3) == doctest::Approx(-1.0));
  CHECK(sf::laguerre_derivative(4, 1.3, 0.7) == doctest::Approx(oracle::frozen::kLaguerreDeriv).epsilon(1e-13));
  auto fn = [](double z) { return sf::laguerre(4, 1.3, z); };
  CHECK(std::abs(central(fn, 0.7, 1e-5) - sf::laguerre_derivative(4, 1.3, 0.7)) < 1e-6);
  auto d1 = [](double z) { return sf::laguerre_derivative(6, -0.4, z); };
  CHECK(std::abs(central(d1, 1.9, 1e-5) - sf::laguerre_second_derivative(6, -0.4, 1.9)) < 1e-6);
}

TEST_CASE("jacobi low degrees") {
  for (double a : {-1.5, 0.4, 3.0}) {
    for (double b : {-2.2, 0.0, 1.1}) {
      for (double x : {-0.9, 0.1, 2.0}) {
        CHECK(sf::jacobi(0, a, b, x) == 1.0);
        CHECK(sf::jacobi(1, a, b, x) ==
              doctest::Approx((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0).epsilon(1e-14));
        CHECK(sf::jacobi_derivative(1, a, b, x) == doctest::Approx((a + b + 2.0) / 2.0));
      }
    }
  }
  CHECK(sf::jacobi_derivative(0, 0.3, 0.2, 0.5) == 0.0);
}

TEST_CASE("jacobi frozen values") {
  CHECK(sf::jacobi(2, 0.4, -1.1, 0.3) == doctest::Approx(oracle::frozen::kJacobi2).epsilon(1e-14));
  CHECK(rel_err(sf::jacobi(2, 0.4, -1.1, 0.3), oracle::jacobi(2, 0.4L, -1.1L, 0.3L)) < 1e-14);
  CHECK(sf::jacobi_derivative(3, 2.0, -0.5, -0.2) == doctest::Approx(oracle::frozen::kJacobiDeriv).epsilon(1e-13));
  auto fn = [](double x) { return sf::jacobi(3, 2.0, -0.5, x); };
  CHECK(std::abs(central(fn, -0.2, 1e-5) - sf::jacobi_derivative(3, 2.0, -0.5, -0.2)) < 1e-6);
  auto d1 = [](double x) { return sf::jacobi_derivative(5, 0.7, -1.3, x); };
  CHECK(std::abs(central(d1, 0.35, 1e-5) - sf::jacobi_second_derivative(5, 0.7, -1.3, 0.35)) < 1e-6);
}

TEST_CASE("jacobi recurrence breakdown falls back to the series") {
  // k + a + b = 0 at k = 2.
  const double a = -1.0, b = -1.0;
  CHECK_FALSE(sf::jacobi_recurrence_ok(3, a, b));
  CHECK_THROWS_AS(sf::jacobi_recurrence(3, a, b, 0.4), RecurrenceBreakdown);
  const double v = sf::jacobi(3, a, b, 0.4);
  CHECK(v == doctest::Approx(static_cast<double>(oracle::jacobi(3, a, b, 0.4L))).epsilon(1e-13));
}

TEST_CASE("recurrence against the independent series, random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> par(-5.0, 5.0);
  std::uniform_int_distribution<int> deg(0, 10);
  double worst = 0.0;
  int used = 0;
  while (used < 100) {
    const int n = deg(rng);
    const double a = par(rng), b = par(rng), x = par(rng);
    if (!sf::jacobi_recurrence_ok(n, a, b)) continue;
    ++used;
    worst = std::max(worst, rel_err(sf::laguerre(n, a, x), oracle::laguerre(n, a, x)));
    worst = std::max(worst, rel_err(sf::jacobi_recurrence(n, a, b, x), oracle::jacobi(n, a, b, x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("degree property: (n+1)-th forward difference vanishes") {
  for (int n = 0; n <= 8; ++n) {
    auto check = [n](auto fn) {
      double diff = 0.0, scale = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= n + 1; ++j) {
        const double sign = ((n + 1 - j) % 2 == 0) ? 1.0 : -1.0;
        const double term = sign * binom * fn(static_cast<double>(j));
        diff += term;
        scale = std::max(scale, std::abs(term));
        binom = binom * (n + 1 - j) / (j + 1);
      }
      CHECK(std::abs(diff) <= 1e-9 * std::max(1.0, scale));
    };
    check([n](double z) { return sf::laguerre(n, 1.7, z); });
    check([n](double x) { return sf::jacobi(n, 0.6, -1.4, x); });
  }
}

TEST_CASE("jacobi reflection") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> par(-3.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = trial % 9;
    const double a = par(rng), b = par(rng), x = par(rng);
    const double lhs = sf::jacobi(n, a, b, -x);
    const double rhs = (n % 2 == 0 ? 1.0 : -1.0) * sf::jacobi(n, b, a, x);
    const double scale = std::max(1.0, std::abs(rhs));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
  }
}

TEST_CASE("laguerre ODE") {
  for (int n = 0; n <= 8; ++n) {
    for (double a : {-0.7, 0.0, 2.5}) {
      for (double z : {0.1, 1.3, 4.0, 7.5}) {
        const double L = sf::laguerre(n, a, z);
        const double d1 = sf::laguerre_derivative(n, a, z);
        const double d2 = sf::laguerre_second_derivative(n, a, z);
        const double t0 = z * d2, t1 = (a + 1.0 - z) * d1, t2 = n * L;
        const double scale = std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2)});
        CHECK(std::abs(t0 + t1 + t2) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("binomial") {
  CHECK(sf::binomial(5.0, 2) == doctest::Approx(10.0));
  CHECK(sf::binomial(0.5, 0) == 1.0);
  CHECK(sf::binomial(-1.5, 2) == doctest::Approx(1.875));
}
