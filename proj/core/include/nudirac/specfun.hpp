#pragma once

// Generalized Laguerre and Jacobi polynomials with arbitrary real
// parameters. Arguments may be real or std::complex<double>; every routine
// is a finite polynomial evaluation, so no branch cuts are involved.
//
// Negative degrees evaluate to zero. The derivative identities rely on that
// (d/dz L_0 = -L_{-1} = 0).

#include <cmath>
#include <complex>

#include "nudirac/errors.hpp"

namespace nudirac::specfun {

/// Threshold below which a Jacobi recurrence denominator factor is treated
/// as vanishing.
inline constexpr double kRecurrenceGuard = 1e-12;

/// Extended-precision working type for the recurrences; results are
/// rounded once on return.
template <class T>
struct Wide {
  using type = long double;
};
template <class T>
struct Wide<std::complex<T>> {
  using type = std::complex<long double>;
};
template <class T>
using wide_t = typename Wide<T>::type;

/// Generalized binomial coefficient C(x, k) for real x and integer k >= 0.
inline double binomial(double x, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= (x - j) / (j + 1);
  return r;
}

/// L_n^(alpha)(z) by the three-term recurrence.
template <class T>
T laguerre(int n, double alpha, const T& z) {
  using W = wide_t<T>;
  if (n < 0) return T(0);
  if (n == 0) return T(1);
  const W w(z);
  const long double al = alpha;
  W prev(1);
  W cur = W(1.0L + al) - w;
  for (int k = 1; k < n; ++k) {
    W next = ((W(2.0L * k + 1.0L + al) - w) * cur - W(k + al) * prev) / W(k + 1.0L);
    prev = cur;
    cur = next;
  }
  return T(cur);
}

/// L_n^(alpha)(z) from the explicit finite sum
/// sum_k (-1)^k C(n + alpha, n - k) z^k / k!.
template <class T>
T laguerre_series(int n, double alpha, const T& z) {
  if (n < 0) return T(0);
  T sum(0);
  T zk(1);
  double kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      zk *= z;
      kfact *= k;
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += T(sign * binomial(n + alpha, n - k) / kfact) * zk;
  }
  return sum;
}

/// d/dz L_n^(alpha)(z) = -L_{n-1}^(alpha+1)(z).
template <class T>
T laguerre_derivative(int n, double alpha, const T& z) {
  return -laguerre(n - 1, alpha + 1.0, z);
}

/// Second derivative, L_{n-2}^(alpha+2)(z).
template <class T>
T laguerre_second_derivative(int n, double alpha, const T& z) {
  return laguerre(n - 2, alpha + 2.0, z);
}

/// True when the standard Jacobi recurrence has no vanishing denominator
/// up to degree n for these parameters.
inline bool jacobi_recurrence_ok(int n, double a, double b) {
  for (int k = 2; k <= n; ++k) {
    if (std::abs(k + a + b) <= kRecurrenceGuard ||
        std::abs(2.0 * k + a + b - 2.0) <= kRecurrenceGuard) {
      return false;
    }
  }
  return true;
}

/// P_n^(a,b)(x) by the three-term recurrence. Throws RecurrenceBreakdown
/// when a denominator factor vanishes (see jacobi_recurrence_ok).
template <class T>
T jacobi_recurrence(int n, double a, double b, const T& x) {
  using W = wide_t<T>;
  if (n < 0) return T(0);
  if (n == 0) return T(1);
  if (!jacobi_recurrence_ok(n, a, b)) {
    throw RecurrenceBreakdown("degenerate Jacobi parameters for the recurrence");
  }
  const W w(x);
  const long double la = a, lb = b;
  W prev(1);
  W cur = W(la + 1.0L) + W(0.5L * (la + lb + 2.0L)) * (w - W(1));
  const long double ab2 = la * la - lb * lb;
  for (int k = 2; k <= n; ++k) {
    const long double s = 2.0L * k + la + lb;
    const long double den = 2.0L * k * (k + la + lb) * (s - 2.0L);
    const long double c1 = (s - 1.0L) * s * (s - 2.0L);
    const long double c0 = (s - 1.0L) * ab2;
    const long double c2 = 2.0L * (k + la - 1.0L) * (k + lb - 1.0L) * s;
    W next = ((W(c1) * w + W(c0)) * cur - W(c2) * prev) / W(den);
    prev = cur;
    cur = next;
  }
  return T(cur);
}

/// P_n^(a,b)(x) from the explicit finite sum
/// sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k).
/// Valid for every real a, b.
template <class T>
T jacobi_series(int n, double a, double b, const T& x) {
  if (n < 0) return T(0);
  const T lo = (x - T(1)) * T(0.5);
  const T hi = (x + T(1)) * T(0.5);
  T sum(0);
  for (int k = 0; k <= n; ++k) {
    T term(binomial(n + a, n - k) * binomial(n + b, k));
    for (int j = 0; j < k; ++j) term *= lo;
    for (int j = 0; j < n - k; ++j) term *= hi;
    sum += term;
  }
  return sum;
}

/// P_n^(a,b)(x): recurrence when its denominators are safe, finite series
/// otherwise.
template <class T>
T jacobi(int n, double a, double b, const T& x) {
  if (jacobi_recurrence_ok(n, a, b)) return jacobi_recurrence(n, a, b, x);
  return jacobi_series(n, a, b, x);
}

/// d/dx P_n^(a,b)(x) = (n + a + b + 1)/2 * P_{n-1}^(a+1,b+1)(x).
template <class T>
T jacobi_derivative(int n, double a, double b, const T& x) {
  if (n <= 0) return T(0);
  return T(0.5 * (n + a + b + 1.0)) * jacobi(n - 1, a + 1.0, b + 1.0, x);
}

template <class T>
T jacobi_second_derivative(int n, double a, double b, const T& x) {
  if (n <= 1) return T(0);
  return T(0.25 * (n + a + b + 1.0) * (n + a + b + 2.0)) *
         jacobi(n - 2, a + 2.0, b + 2.0, x);
}

}  // namespace nudirac::specfun
