#pragma once

// Independent reference values for the unit and acceptance tests. Nothing
// here calls into the library.

#include <algorithm>
#include <cmath>
#include <complex>

namespace oracle {

// L_n^(a)(z) = (a+1)_n / n! * 1F1(-n; a+1; z), summed in long double.
// (a+1)_n / (a+1)_k is written as a product so that no Pochhammer symbol is
// divided by, which keeps negative-integer a+1 harmless.
inline long double laguerre(int n, long double a, long double z) {
  if (n < 0) return 0.0L;
  long double sum = 0.0L;
  long double nfact = 1.0L;
  for (int j = 1; j <= n; ++j) nfact *= j;
  long double minus_n_k = 1.0L;  // (-n)_k
  long double kfact = 1.0L;
  long double zk = 1.0L;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      minus_n_k *= static_cast<long double>(-n + k - 1);
      kfact *= k;
      zk *= z;
    }
    long double tail = 1.0L;  // (a+1)_n / (a+1)_k
    for (int j = k; j < n; ++j) tail *= a + 1.0L + j;
    sum += minus_n_k / kfact * tail / nfact * zk;
  }
  return sum;
}

// P_n^(a,b)(x) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2).
inline long double jacobi(int n, long double a, long double b, long double x) {
  if (n < 0) return 0.0L;
  const long double t = (1.0L - x) / 2.0L;
  long double nfact = 1.0L;
  for (int j = 1; j <= n; ++j) nfact *= j;
  long double sum = 0.0L;
  long double minus_n_k = 1.0L;
  long double upper_k = 1.0L;  // (n+a+b+1)_k
  long double kfact = 1.0L;
  long double tk = 1.0L;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      minus_n_k *= static_cast<long double>(-n + k - 1);
      upper_k *= n + a + b + k;
      kfact *= k;
      tk *= t;
    }
    long double tail = 1.0L;
    for (int j = k; j < n; ++j) tail *= a + 1.0L + j;
    sum += minus_n_k * upper_k / kfact * tail / nfact * tk;
  }
  return sum;
}

// Roots of a z^2 + b z + c with a != 0 and b^2 >= 4ac, larger first.
struct QuadRoots {
  double hi;
  double lo;
};
inline QuadRoots quadratic(double a, double b, double c) {
  const long double d = std::sqrt(static_cast<long double>(b) * b - 4.0L * a * c);
  const long double r1 = (-b + d) / (2.0L * a);
  const long double r2 = (-b - d) / (2.0L * a);
  return {static_cast<double>(std::max(r1, r2)), static_cast<double>(std::min(r1, r2))};
}

// Rising-model spectrum, expanded by hand:
// E^2 = -delta m0 (2n+1) - delta^2 (2n+1)^2 / 4.
inline double rising_e_squared(double m0, double delta, int n) {
  const double k = 2.0 * n + 1.0;
  return -delta * m0 * k - 0.25 * delta * delta * k * k;
}

// Values computed once with mpmath at 50 digits.
namespace frozen {
inline constexpr double kLaguerre3Half2 = -0.895833333333333333;         // L_3^(0.5)(2)
inline constexpr double kJacobi2 = 0.2128875;                            // P_2^(0.4,-1.1)(0.3)
inline constexpr double kLaguerreDeriv = -5.799333333333333;             // d/dz L_4^(1.3)(0.7)
inline constexpr double kJacobiDeriv = -1.99375;                         // d/dx P_3^(2,-0.5)(-0.2)
inline constexpr double kInvE = 0.36787944117144233;                     // e^-1
inline constexpr double kSqrt2InvE = 0.5202600950228889;                 // sqrt(2) e^-1
inline constexpr double kPredicateA = 7.04987562112089;                  // m0 = 5, delta = 1, n = 1

// Sigmoid spectrum, n = 0..5.
inline constexpr double kSigmoidHeavy[6] = {-0.0025,          -0.022805595325507955,
                                            -0.06404790902784401, -0.126890933,
                                            -0.2120336037,    -0.3202120325};  // m0 = 10, delta = 0.1
inline constexpr double kSigmoidUnit[6] = {-0.25,
                                           -1.25,
                                           -0.10835921350012618,
                                           -0.9625029947315875,
                                           -2.381281077874197,
                                           -4.313426261578767};  // m0 = delta = 1
}  // namespace frozen

}  // namespace oracle
