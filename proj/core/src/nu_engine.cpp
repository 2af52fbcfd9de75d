#include "nudirac/nu_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

#include "nudirac/errors.hpp"
#include "nudirac/specfun.hpp"

namespace nudirac::nu {

namespace {

constexpr double kFeasibilityTol = 1e-12;  // relative slack on the k discriminant
constexpr double kSquareTol = 1e-8;        // relative slack on the radicand discriminant
constexpr double kQuantizeTol = 1e-12;
constexpr int kMaxIterations = 400;

struct StableRoots {
  double small = 0.0;
  double large = 0.0;
};

// Distinct real roots of a2 z^2 + a1 z + a0 (a2 != 0, disc > 0).
StableRoots quadratic_roots(double a2, double a1, double a0, double disc) {
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (a1 + std::copysign(sq, a1));
  double r1 = q / a2;
  double r2 = a0 / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace

HypergeometricForm HypergeometricForm::make(Poly tau_tilde, Poly sigma,
                                            std::array<Poly, 3> sigma_tilde_terms,
                                            std::string parameter_name) {
  if (sigma.is_zero()) throw std::invalid_argument("sigma must not vanish identically");
  if (tau_tilde.degree() > 1) throw std::invalid_argument("tau_tilde must be at most linear");
  return HypergeometricForm{tau_tilde, sigma, sigma_tilde_terms, std::move(parameter_name)};
}

Poly HypergeometricForm::sigma_tilde(double s) const {
  return sigma_tilde_terms[0] + s * sigma_tilde_terms[1] + (s * s) * sigma_tilde_terms[2];
}

std::string to_string(const BranchId& id) {
  std::string out = id.k_root == KRoot::Upper ? "k-upper" : "k-lower";
  out += id.pi_sign == PiSign::Plus ? "/pi-plus" : "/pi-minus";
  return out;
}

Poly radicand(const HypergeometricForm& form, double s, double k) {
  const Poly p = 0.5 * (form.sigma.derivative() - form.tau_tilde);
  const double p0 = p.coeff(0);
  const double p1 = p.coeff(1);
  const Poly p_squared{p0 * p0, 2.0 * p0 * p1, p1 * p1};
  return p_squared - form.sigma_tilde(s) + k * form.sigma;
}

std::vector<double> k_candidates(const HypergeometricForm& form, double s) {
  // Radicand c + k sigma is a perfect square iff its discriminant
  // (c1 + k s1)^2 - 4 (c0 + k s0)(c2 + k s2) vanishes: A k^2 + B k + C = 0.
  const Poly c = radicand(form, s, 0.0);
  const double c0 = c.coeff(0), c1 = c.coeff(1), c2 = c.coeff(2);
  const double s0 = form.sigma.coeff(0), s1 = form.sigma.coeff(1), s2 = form.sigma.coeff(2);

  const double a = s1 * s1 - 4.0 * s0 * s2;
  const double b = 2.0 * c1 * s1 - 4.0 * (c0 * s2 + c2 * s0);
  const double cc = c1 * c1 - 4.0 * c0 * c2;

  if (a != 0.0) {
    double disc = b * b - 4.0 * a * cc;
    const double disc_scale = std::max(b * b, std::abs(4.0 * a * cc));
    if (disc < 0.0) {
      if (disc < -kFeasibilityTol * disc_scale) {
        throw NoRealK("k equation has complex roots at s = " + std::to_string(s));
      }
      disc = 0.0;
    }
    if (disc == 0.0) {
      const double k = -b / (2.0 * a);
      return {k, k};
    }
    const auto roots = quadratic_roots(a, b, cc, disc);
    return {roots.large, roots.small};
  }
  if (b != 0.0) return {-cc / b};
  throw NoRealK("k equation is degenerate (no unique perfect-square k)");
}

std::array<Poly, 2> pi_for_k(const HypergeometricForm& form, double s, double k) {
  const Poly r = radicand(form, s, k);
  const double r0 = r.coeff(0), r1 = r.coeff(1), r2 = r.coeff(2);
  const double scale = std::max(r.max_abs_coeff(), std::numeric_limits<double>::min());

  const double disc = r1 * r1 - 4.0 * r0 * r2;
  const double disc_scale = std::max(r1 * r1, std::abs(4.0 * r0 * r2));
  if (std::abs(disc) > kSquareTol * disc_scale) {
    throw InconsistentK("radicand is not a perfect square at k = " + std::to_string(k));
  }

  Poly root;
  if (r2 > kFeasibilityTol * scale) {
    const double lead = std::sqrt(r2);
    root = Poly{r1 / (2.0 * lead), lead};
  } else if (r2 < -kFeasibilityTol * scale) {
    throw InconsistentK("radicand has a negative leading coefficient; pi would be complex");
  } else {
    if (std::abs(r1) > kSquareTol * scale || r0 < -kFeasibilityTol * scale) {
      throw InconsistentK("constant radicand is negative; pi would be complex");
    }
    root = Poly{std::sqrt(std::max(r0, 0.0))};
  }
  return {root, -root};
}

std::vector<NuBranch> enumerate_branches(const HypergeometricForm& form, double s) {
  const std::vector<double> ks = k_candidates(form, s);
  std::vector<NuBranch> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::array<Poly, 2> pis;
    try {
      pis = pi_for_k(form, s, ks[i]);
    } catch (const InconsistentK&) {
      continue;
    }
    for (int sgn = 0; sgn < 2; ++sgn) {
      NuBranch b;
      b.id = {i == 0 ? KRoot::Upper : KRoot::Lower, sgn == 0 ? PiSign::Plus : PiSign::Minus};
      b.k = ks[i];
      b.pi = pis[static_cast<std::size_t>(sgn)];
      b.tau = form.tau_tilde + 2.0 * b.pi;
      b.lambda = b.k + b.pi.coeff(1);
      b.admissible = b.tau_slope() < 0.0;
      out.push_back(b);
    }
  }
  const auto count = static_cast<int>(
      std::count_if(out.begin(), out.end(), [](const NuBranch& b) { return b.admissible; }));
  for (auto& b : out) b.admissible_count = count;
  return out;
}

namespace {

// Strict weak ordering: more negative tau' first, then larger k.
bool branch_preferred(const NuBranch& a, const NuBranch& b) {
  const double ta = a.tau_slope();
  const double tb = b.tau_slope();
  const double tol = 1e-12 * std::max({1.0, std::abs(ta), std::abs(tb)});
  if (std::abs(ta - tb) > tol) return ta < tb;
  return a.id.k_root == KRoot::Upper && b.id.k_root == KRoot::Lower;
}

}  // namespace

NuBranch select_branch(const HypergeometricForm& form, double s) {
  std::vector<NuBranch> all = enumerate_branches(form, s);
  std::vector<NuBranch> ok;
  std::copy_if(all.begin(), all.end(), std::back_inserter(ok),
               [](const NuBranch& b) { return b.admissible; });
  if (ok.empty()) {
    throw NoAdmissibleBranch("no (k, pi) combination gives tau' < 0 at s = " +
                             std::to_string(s));
  }
  std::stable_sort(ok.begin(), ok.end(), branch_preferred);
  return ok.front();
}

double lambda_n(const NuBranch& branch, const Poly& sigma, int n) {
  const double sigma_pp = 2.0 * sigma.coeff(2);
  return -n * branch.tau_slope() - 0.5 * n * (n - 1) * sigma_pp;
}

namespace {

struct Probe {
  NuBranch branch;
  double f = 0.0;
  double scale = 1.0;
};

std::map<BranchId, Probe> probe_all(const HypergeometricForm& form, int n, double s) {
  std::map<BranchId, Probe> out;
  std::vector<NuBranch> branches;
  try {
    branches = enumerate_branches(form, s);
  } catch (const NoRealK&) {
    return out;
  }
  for (const auto& b : branches) {
    const double ln = lambda_n(b, form.sigma, n);
    Probe p{b, b.lambda - ln, std::max({1.0, std::abs(b.lambda), std::abs(ln)})};
    out.emplace(b.id, p);
  }
  return out;
}

}  // namespace

Quantization quantize(const HypergeometricForm& form, int n, Bracket bracket) {
  if (n < 0) throw std::invalid_argument("quantum number must be non-negative");
  double lo = std::min(bracket.lo, bracket.hi);
  double hi = std::max(bracket.lo, bracket.hi);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw NoSignChange("empty or non-finite bracket");
  }

  const auto at_lo = probe_all(form, n, lo);
  const auto at_hi = probe_all(form, n, hi);

  std::vector<Probe> candidates;
  bool admissibility_flip = false;
  for (const auto& [id, plo] : at_lo) {
    auto it = at_hi.find(id);
    if (it == at_hi.end()) continue;
    const Probe& phi = it->second;
    if (plo.f * phi.f > 0.0) continue;
    if (plo.branch.admissible != phi.branch.admissible) {
      admissibility_flip = true;
      continue;
    }
    candidates.push_back(plo);
  }
  if (candidates.empty()) {
    if (admissibility_flip) {
      throw BranchJump("a sign change exists only across an admissibility change; split the bracket");
    }
    throw NoSignChange("no branch changes sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Probe& a, const Probe& b) {
    if (a.branch.admissible != b.branch.admissible) return a.branch.admissible;
    return branch_preferred(a.branch, b.branch);
  });

  const BranchId id = candidates.front().branch.id;
  const bool admissible = candidates.front().branch.admissible;

  auto eval = [&](double s) -> Probe {
    auto all = probe_all(form, n, s);
    auto it = all.find(id);
    if (it == all.end() || it->second.branch.admissible != admissible) {
      throw BranchJump("branch " + to_string(id) + " changes identity at s = " +
                       std::to_string(s) + "; split the bracket");
    }
    return it->second;
  };

  Quantization result;
  result.candidates = static_cast<int>(candidates.size());

  Probe pa = eval(lo);
  Probe pb = eval(hi);
  auto finish = [&](double s, const Probe& p, int iterations) {
    result.s = s;
    result.branch = p.branch;
    result.residual = std::abs(p.f);
    result.scale = p.scale;
    result.iterations = iterations;
    return result;
  };
  if (pa.f == 0.0) return finish(lo, pa, 0);
  if (pb.f == 0.0) return finish(hi, pb, 0);

  // Illinois false position inside a bisection safeguard.
  double a = lo, b = hi;
  double fa = pa.f, fb = pb.f;
  int side = 0;
  double best_s = std::abs(fa) / pa.scale < std::abs(fb) / pb.scale ? a : b;
  Probe best = std::abs(fa) / pa.scale < std::abs(fb) / pb.scale ? pa : pb;
  double width_checkpoint = b - a;

  for (int it = 1; it <= kMaxIterations; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    const bool force_bisect = it % 3 == 0 && (b - a) > 0.5 * width_checkpoint;
    if (it % 3 == 0) width_checkpoint = b - a;
    if (force_bisect || !(c > a && c < b)) c = 0.5 * (a + b);

    const Probe pc = eval(c);
    if (std::abs(pc.f) / pc.scale < std::abs(best.f) / best.scale) {
      best = pc;
      best_s = c;
    }
    if (std::abs(pc.f) <= kQuantizeTol * pc.scale) return finish(c, pc, it);

    if ((pc.f > 0.0) == (fb > 0.0)) {
      b = c;
      fb = pc.f;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = pc.f;
      if (side == +1) fb *= 0.5;
      side = +1;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max(std::abs(a), std::abs(b))) {
      return finish(best_s, best, it);
    }
  }
  return finish(best_s, best, kMaxIterations);
}

double PowerExpFactor::log_abs(double z) const {
  double out = c1 * z + c2 * z * z;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (powers[i] != 0.0) out += powers[i] * std::log(std::abs(z - roots[i]));
  }
  return out;
}

double PowerExpFactor::value(double z) const { return std::exp(log_abs(z)); }

double PowerExpFactor::log_derivative(double z) const {
  double out = c1 + 2.0 * c2 * z;
  for (std::size_t i = 0; i < roots.size(); ++i) out += powers[i] / (z - roots[i]);
  return out;
}

double PowerExpFactor::log_second_derivative(double z) const {
  double out = 2.0 * c2;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double d = z - roots[i];
    out -= powers[i] / (d * d);
  }
  return out;
}

PowerExpFactor integrate_ratio(const Poly& numer, const Poly& sigma) {
  const double n0 = numer.coeff(0), n1 = numer.coeff(1), n2 = numer.coeff(2);
  PowerExpFactor f;
  switch (sigma.degree()) {
    case 0: {
      if (n2 != 0.0) throw std::domain_error("quadratic numerator over constant sigma");
      const double c = sigma.coeff(0);
      f.c1 = n0 / c;
      f.c2 = n1 / (2.0 * c);
      return f;
    }
    case 1: {
      const double s1 = sigma.coeff(1);
      const double z0 = -sigma.coeff(0) / s1;
      // numer = (z - z0)(q0 + q1 z) + numer(z0)
      const double q1 = n2;
      const double q0 = n1 + z0 * n2;
      f.c1 = q0 / s1;
      f.c2 = q1 / (2.0 * s1);
      f.roots = {z0};
      f.powers = {numer(z0) / s1};
      return f;
    }
    case 2: {
      const double s0 = sigma.coeff(0), s1 = sigma.coeff(1), s2 = sigma.coeff(2);
      const double disc = s1 * s1 - 4.0 * s0 * s2;
      if (!(disc > 0.0)) {
        throw std::domain_error("sigma must have two distinct real roots");
      }
      const auto [r1, r2] = quadratic_roots(s2, s1, s0, disc);
      const double lead = n2 / s2;
      const Poly rem = numer - lead * sigma;
      f.c1 = lead;
      f.roots = {r1, r2};
      f.powers = {rem(r1) / (s2 * (r1 - r2)), rem(r2) / (s2 * (r2 - r1))};
      return f;
    }
    default:
      throw std::domain_error("sigma must not vanish");
  }
}

PowerExpFactor chi_factor(const NuBranch& branch, const Poly& sigma) {
  return integrate_ratio(branch.pi, sigma);
}

PowerExpFactor weight_rho(const NuBranch& branch, const Poly& sigma) {
  return integrate_ratio(branch.tau - sigma.derivative(), sigma);
}

double ClassicalPolynomial::value(double z) const {
  const double t = t0 + t1 * z;
  return family == Family::Laguerre ? specfun::laguerre(n, p, t) : specfun::jacobi(n, p, q, t);
}

double ClassicalPolynomial::derivative(double z) const {
  const double t = t0 + t1 * z;
  const double d = family == Family::Laguerre ? specfun::laguerre_derivative(n, p, t)
                                              : specfun::jacobi_derivative(n, p, q, t);
  return t1 * d;
}

double ClassicalPolynomial::second_derivative(double z) const {
  const double t = t0 + t1 * z;
  const double d = family == Family::Laguerre ? specfun::laguerre_second_derivative(n, p, t)
                                              : specfun::jacobi_second_derivative(n, p, q, t);
  return t1 * t1 * d;
}

ClassicalPolynomial rodrigues_polynomial(const NuBranch& branch, const Poly& sigma, int n) {
  if (n < 0) throw std::invalid_argument("degree must be non-negative");
  ClassicalPolynomial y;
  y.n = n;
  const Poly& tau = branch.tau;
  if (sigma.degree() == 1) {
    // sigma = s1 (z - z0): y = L_n^(beta)(kappa (z - z0)).
    const double s1 = sigma.coeff(1);
    const double z0 = -sigma.coeff(0) / s1;
    const double kappa = -tau.coeff(1) / s1;
    if (kappa == 0.0) throw std::domain_error("tau' = 0 leaves no Laguerre scaling");
    y.family = ClassicalPolynomial::Family::Laguerre;
    y.p = tau(z0) / s1 - 1.0;
    y.t1 = kappa;
    y.t0 = -kappa * z0;
    return y;
  }
  if (sigma.degree() == 2) {
    // sigma = s2 (z - r1)(z - r2): y = P_n^(a,b)(t), t = 1 at r1 and -1 at r2.
    const double s0 = sigma.coeff(0), s1 = sigma.coeff(1), s2 = sigma.coeff(2);
    const double disc = s1 * s1 - 4.0 * s0 * s2;
    if (!(disc > 0.0)) throw std::domain_error("sigma must have two distinct real roots");
    const auto [r1, r2] = quadratic_roots(s2, s1, s0, disc);
    const double d = r2 - r1;
    y.family = ClassicalPolynomial::Family::Jacobi;
    y.p = -tau(r1) / (s2 * d) - 1.0;
    y.q = tau(r2) / (s2 * d) - 1.0;
    y.t1 = -2.0 / d;
    y.t0 = 1.0 + 2.0 * r1 / d;
    return y;
  }
  throw std::domain_error("polynomial route needs linear or quadratic sigma");
}

}  // namespace nudirac::nu
