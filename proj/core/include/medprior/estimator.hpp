#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medprior/bigfloat.hpp"
#include "medprior/rational.hpp"

namespace medprior {

enum class EstimatorKind { Affine, SaturatingAffine, Table };

// The prescribed posterior-median target f: strictly increasing on [0:c0],
// constant beyond c0, strictly positive everywhere. Coefficients are exact
// rationals (command-line inputs are decimal strings), so every backend can
// evaluate f without rounding at the source.
class PrescribedEstimator {
 public:
  // f(y) = a*y + b with a > 0, b > 0; increasing forever (c0 = ∞).
  static PrescribedEstimator affine(const Rational& a, const Rational& b);
  // f(y) = a*min(y, c0) + b: affine up to c0, constant afterwards.
  static PrescribedEstimator saturating_affine(const Rational& a, const Rational& b,
                                               unsigned long c0);
  // Explicit strictly increasing values f(0..n-1), constant f(n-1) afterwards
  // (c0 = n-1). Values must be positive.
  static PrescribedEstimator table(std::vector<Rational> values);

  EstimatorKind kind() const { return kind_; }
  // Slope/intercept; DomainError for the Table variant.
  const Rational& a() const;
  const Rational& b() const;
  // True when f is eventually constant (finite c0).
  bool saturates() const { return c0_.has_value(); }
  // The saturation point; DomainError when f increases forever.
  unsigned long c0() const;
  const std::vector<Rational>& table_values() const;

  // f(y), exactly.
  Rational value(unsigned long y) const;

  // Human-readable one-liner, e.g. "affine(a=3/10, b=3/10)".
  std::string describe() const;

 private:
  PrescribedEstimator() = default;

  EstimatorKind kind_ = EstimatorKind::Affine;
  Rational a_;
  Rational b_;
  std::optional<unsigned long> c0_;
  std::vector<Rational> values_;
};

// Verdict of the summability screen deciding whether the estimator admits a
// proper prior in the infinite-support limit.
struct AdmissibilityReport {
  bool admissible = false;
  BigFloat kappa_star;      // best spacing parameter found, >= 1
  BigFloat partial_sum;     // truncated series value at kappa_star
  BigFloat asymptotic_rate; // estimated log growth rate of the terms
  std::string diagnostics;  // per-kappa table and verdict notes
};

// f(y); constant f(c0) beyond the saturation point.
Rational evaluate(const PrescribedEstimator& f, unsigned long y);

// (f(0), f(1), ..., f(M)): the M+1 support points used at truncation level M.
// Requires M <= c0, otherwise the points would repeat (DomainError).
std::vector<Rational> support_points(const PrescribedEstimator& f, unsigned long M);

// kappa in {1, 1.25, 1.5, ..., 8}; the analytic optimum e is appended by
// check_summability for affine estimators.
std::vector<BigFloat> default_kappa_grid();

// Evaluates the tail-bound series Σ_i (f(⌊i/κ⌋)/f(i))^⌊i/κ⌋ · e^{f(i)} over
// the kappa grid, estimating the exponential growth rate of its terms.
// Admissible when some kappa gives geometric decay; for affine estimators the
// closed-form rate a − ln(κ)/κ decides (admissible iff a < 1/e, κ* = e), and
// estimators with finite c0 are trivially admissible. The floor exponent
// ⌊i/κ⌋ is the primary convention; the continuous exponent i/κ is evaluated
// as a cross-check and recorded in the diagnostics.
AdmissibilityReport check_summability(const PrescribedEstimator& f,
                                      const std::vector<BigFloat>& kappa_grid,
                                      unsigned long truncation);
AdmissibilityReport check_summability(const PrescribedEstimator& f);

}  // namespace medprior
