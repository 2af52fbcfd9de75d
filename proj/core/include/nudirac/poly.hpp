#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

namespace nudirac {

/// Real polynomial of degree at most two, constant term first.
///
/// Trailing zero coefficients are trimmed, so degree() reports the true
/// degree (-1 for the zero polynomial). Construction with more than three
/// non-trailing-zero coefficients throws std::invalid_argument.
class Poly {
 public:
  static constexpr int kMaxDegree = 2;

  Poly() = default;
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(const std::vector<double>& coeffs);

  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return degree_ < 0; }

  /// Coefficient of z^i; zero for i above the degree.
  double coeff(int i) const noexcept {
    return (i >= 0 && i <= kMaxDegree) ? c_[static_cast<std::size_t>(i)] : 0.0;
  }
  const std::array<double, 3>& coeffs() const noexcept { return c_; }

  template <class T>
  T operator()(const T& z) const {
    return (T(c_[2]) * z + T(c_[1])) * z + T(c_[0]);
  }

  Poly derivative() const;

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double max_abs_coeff() const noexcept;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(double s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();

  std::array<double, 3> c_{};
  int degree_ = -1;
};

}  // namespace nudirac
