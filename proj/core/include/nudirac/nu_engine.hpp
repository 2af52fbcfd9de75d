#pragma once

// Nikiforov-Uvarov quantization kernel.
//
// A hypergeometric-type equation
//
//   psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0
//
// with deg sigma, deg sigma_tilde <= 2 and deg tau_tilde <= 1 is reduced by
// psi = chi * y to sigma y'' + tau y' + lambda y = 0. The auxiliary linear
// polynomial pi is fixed by requiring the radicand
//
//   ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma
//
// to be a perfect square in z, which pins k. Quantization is the condition
// lambda = k + pi' = -n tau' - n(n-1)/2 sigma''.
//
// sigma_tilde carries one real spectral unknown s, entering coefficient-wise
// as a quadratic in s. All arithmetic is over real coefficients.

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "nudirac/poly.hpp"

namespace nudirac::nu {

struct HypergeometricForm {
  Poly tau_tilde;
  Poly sigma;
  /// sigma_tilde(s) = terms[0] + s * terms[1] + s^2 * terms[2].
  std::array<Poly, 3> sigma_tilde_terms;
  std::string parameter_name;

  /// Validates degree bounds and sigma != 0; throws std::invalid_argument.
  static HypergeometricForm make(Poly tau_tilde, Poly sigma,
                                 std::array<Poly, 3> sigma_tilde_terms,
                                 std::string parameter_name);

  Poly sigma_tilde(double s) const;
};

enum class KRoot { Upper, Lower };  // larger / smaller root of the k equation
enum class PiSign { Plus, Minus };  // sign in front of the square root

struct BranchId {
  KRoot k_root = KRoot::Upper;
  PiSign pi_sign = PiSign::Plus;
  friend auto operator<=>(const BranchId&, const BranchId&) = default;
};

std::string to_string(const BranchId& id);

struct NuBranch {
  BranchId id;
  double k = 0.0;
  Poly pi;
  Poly tau;
  double lambda = 0.0;
  bool admissible = false;   // tau' < 0
  int admissible_count = 0;  // admissible candidates at the same s

  double tau_slope() const noexcept { return tau.coeff(1); }
};

/// The radicand ((sigma' - tau_tilde)/2)^2 - sigma_tilde(s) + k sigma.
Poly radicand(const HypergeometricForm& form, double s, double k);

/// Real k values (at most two, larger first) making the radicand a perfect
/// square in z. Throws NoRealK when the k equation has no real root.
std::vector<double> k_candidates(const HypergeometricForm& form, double s);

/// {pi_plus, pi_minus} for a k from k_candidates. Throws InconsistentK when
/// the radicand is not the square of a real linear polynomial.
std::array<Poly, 2> pi_for_k(const HypergeometricForm& form, double s, double k);

/// Every real (k, +/-) combination at s, admissible or not.
std::vector<NuBranch> enumerate_branches(const HypergeometricForm& form, double s);

/// The admissible branch with the most negative tau'; ties go to the larger
/// k. Throws NoAdmissibleBranch when no candidate has tau' < 0.
NuBranch select_branch(const HypergeometricForm& form, double s);

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
double lambda_n(const NuBranch& branch, const Poly& sigma, int n);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct Quantization {
  double s = 0.0;         // root of the quantization function
  NuBranch branch;        // branch at the root
  double residual = 0.0;  // |lambda - lambda_n| at the root
  double scale = 1.0;     // max(1, |lambda|, |lambda_n|)
  int iterations = 0;
  int candidates = 0;     // branch identities with a sign change on the bracket
};

/// Solves lambda(s) = lambda_n(s) on the bracket.
///
/// Every branch identity that exists at both ends and changes sign is a
/// candidate. Admissible candidates are preferred over inadmissible ones,
/// then the most negative tau', then the larger k. The chosen identity is
/// tracked through a safeguarded bisection/secant iteration. Throws
/// NoSignChange when no identity changes sign and BranchJump when the
/// tracked identity disappears or changes admissibility inside the bracket.
Quantization quantize(const HypergeometricForm& form, int n, Bracket bracket);

/// exp(c1 z + c2 z^2) * prod_i |z - root_i|^power_i, evaluated for real z.
///
/// Represents exp(integral of p/sigma) for linear p and the sigma shapes the
/// kernel supports (constant, linear, quadratic with distinct real roots).
struct PowerExpFactor {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> roots;
  std::vector<double> powers;

  double log_abs(double z) const;
  double value(double z) const;
  /// d/dz log of the factor.
  double log_derivative(double z) const;
  /// d^2/dz^2 log of the factor.
  double log_second_derivative(double z) const;
};

/// exp(integral numer/sigma). Throws std::domain_error for sigma with a
/// double root or complex roots.
PowerExpFactor integrate_ratio(const Poly& numer, const Poly& sigma);

/// chi with chi'/chi = pi/sigma.
PowerExpFactor chi_factor(const NuBranch& branch, const Poly& sigma);

/// rho with (sigma rho)' = tau rho, up to a constant factor.
PowerExpFactor weight_rho(const NuBranch& branch, const Poly& sigma);

/// Classical orthogonal polynomial y(z) = P(t0 + t1 z) standing in for the
/// Rodrigues construction; P is L_n^(p) (Laguerre) or P_n^(p, q) (Jacobi).
struct ClassicalPolynomial {
  enum class Family { Laguerre, Jacobi };

  Family family = Family::Laguerre;
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;

  double value(double z) const;
  double derivative(double z) const;
  double second_derivative(double z) const;
};

/// Polynomial solution y_n of sigma y'' + tau y' + lambda_n y = 0 for the
/// branch. Linear sigma gives Laguerre, quadratic sigma with distinct real
/// roots gives Jacobi; anything else throws std::domain_error.
ClassicalPolynomial rodrigues_polynomial(const NuBranch& branch, const Poly& sigma, int n);

}  // namespace nudirac::nu
