#include "nudirac/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nudirac {

Poly::Poly(std::initializer_list<double> coeffs)
    : Poly(std::vector<double>(coeffs)) {}

Poly::Poly(const std::vector<double>& coeffs) {
  std::size_t used = coeffs.size();
  while (used > 0 && coeffs[used - 1] == 0.0) --used;
  if (used > c_.size()) {
    throw std::invalid_argument("Poly: degree exceeds 2");
  }
  std::copy_n(coeffs.begin(), used, c_.begin());
  trim();
}

void Poly::trim() {
  degree_ = kMaxDegree;
  while (degree_ >= 0 && c_[static_cast<std::size_t>(degree_)] == 0.0) --degree_;
}

Poly Poly::derivative() const {
  return Poly{c_[1], 2.0 * c_[2]};
}

double Poly::max_abs_coeff() const noexcept {
  return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
}

Poly operator+(const Poly& a, const Poly& b) {
  return Poly{a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
}

Poly operator-(const Poly& a, const Poly& b) {
  return Poly{a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
}

Poly operator-(const Poly& a) { return Poly{-a.c_[0], -a.c_[1], -a.c_[2]}; }

Poly operator*(double s, const Poly& p) {
  return Poly{s * p.c_[0], s * p.c_[1], s * p.c_[2]};
}

}  // namespace nudirac
