#include "medprior/estimator.hpp"

#include <algorithm>
#include <sstream>

#include "medprior/errors.hpp"

namespace medprior {

PrescribedEstimator PrescribedEstimator::affine(const Rational& a, const Rational& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0) {
    throw DomainError("affine estimator requires a > 0 and b > 0");
  }
  PrescribedEstimator f;
  f.kind_ = EstimatorKind::Affine;
  f.a_ = a;
  f.b_ = b;
  return f;
}

PrescribedEstimator PrescribedEstimator::saturating_affine(const Rational& a,
                                                           const Rational& b,
                                                           unsigned long c0) {
  if (sgn(a) <= 0 || sgn(b) <= 0) {
    throw DomainError("saturating affine estimator requires a > 0 and b > 0");
  }
  PrescribedEstimator f;
  f.kind_ = EstimatorKind::SaturatingAffine;
  f.a_ = a;
  f.b_ = b;
  f.c0_ = c0;
  return f;
}

PrescribedEstimator PrescribedEstimator::table(std::vector<Rational> values) {
  if (values.empty()) {
    throw DomainError("table estimator requires at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (sgn(values[i]) <= 0) {
      throw DomainError("table estimator values must be positive");
    }
    if (i > 0 && !(values[i - 1] < values[i])) {
      throw DomainError("table estimator values must be strictly increasing");
    }
  }
  PrescribedEstimator f;
  f.kind_ = EstimatorKind::Table;
  f.c0_ = values.size() - 1;
  f.values_ = std::move(values);
  return f;
}

const Rational& PrescribedEstimator::a() const {
  if (kind_ == EstimatorKind::Table) {
    throw DomainError("table estimator has no slope coefficient");
  }
  return a_;
}

const Rational& PrescribedEstimator::b() const {
  if (kind_ == EstimatorKind::Table) {
    throw DomainError("table estimator has no intercept coefficient");
  }
  return b_;
}

unsigned long PrescribedEstimator::c0() const {
  if (!c0_.has_value()) {
    throw DomainError("estimator increases forever (no saturation point)");
  }
  return *c0_;
}

const std::vector<Rational>& PrescribedEstimator::table_values() const {
  if (kind_ != EstimatorKind::Table) {
    throw DomainError("not a table estimator");
  }
  return values_;
}

Rational PrescribedEstimator::value(unsigned long y) const {
  switch (kind_) {
    case EstimatorKind::Affine:
      return a_ * y + b_;
    case EstimatorKind::SaturatingAffine:
      return a_ * std::min(y, *c0_) + b_;
    case EstimatorKind::Table:
      return values_[std::min<std::size_t>(y, values_.size() - 1)];
  }
  throw InternalError("unreachable estimator kind");
}

std::string PrescribedEstimator::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case EstimatorKind::Affine:
      out << "affine(a=" << to_fraction_string(a_) << ", b=" << to_fraction_string(b_)
          << ")";
      break;
    case EstimatorKind::SaturatingAffine:
      out << "saturating_affine(a=" << to_fraction_string(a_)
          << ", b=" << to_fraction_string(b_) << ", c0=" << *c0_ << ")";
      break;
    case EstimatorKind::Table:
      out << "table(" << values_.size() << " values, last="
          << to_fraction_string(values_.back()) << ")";
      break;
  }
  return out.str();
}

Rational evaluate(const PrescribedEstimator& f, unsigned long y) {
  return f.value(y);
}

std::vector<Rational> support_points(const PrescribedEstimator& f, unsigned long M) {
  if (M < 1) {
    throw DomainError("truncation level M must be at least 1");
  }
  if (f.saturates() && M > f.c0()) {
    throw DomainError("M exceeds the saturation point: support points would repeat");
  }
  std::vector<Rational> points;
  points.reserve(M + 1);
  for (unsigned long y = 0; y <= M; ++y) {
    points.push_back(f.value(y));
  }
  return points;
}

std::vector<BigFloat> default_kappa_grid() {
  std::vector<BigFloat> grid;
  grid.reserve(29);
  for (unsigned long quarters = 4; quarters <= 32; ++quarters) {
    Rational kappa(quarters, 4);
    kappa.canonicalize();
    grid.emplace_back(kappa);
  }
  return grid;
}

namespace {

// Growth-rate probe of the series terms between indices i1 < i2, for both
// exponent conventions. ln t_i = e_i (ln f(⌊i/κ⌋) − ln f(i)) + f(i) with
// e_i = ⌊i/κ⌋ (floor form) or e_i = i/κ (continuous form).
struct KappaScan {
  BigFloat rate_floor;
  BigFloat rate_continuous;
  BigFloat partial_sum;
};

BigFloat log_term(const PrescribedEstimator& f, unsigned long i,
                  const BigFloat& kappa, bool floor_exponent) {
  const unsigned long k = (BigFloat(i) / kappa).floor_ulong();
  const BigFloat fi(evaluate(f, i));
  if (k == 0) {
    return fi;  // ratio power is empty, only e^{f(i)} remains
  }
  const BigFloat ratio_log = log(BigFloat(evaluate(f, k))) - log(fi);
  const BigFloat exponent = floor_exponent ? BigFloat(k) : BigFloat(i) / kappa;
  return exponent * ratio_log + fi;
}

KappaScan scan_kappa(const PrescribedEstimator& f, const BigFloat& kappa,
                     unsigned long truncation) {
  KappaScan scan;
  const unsigned long i1 = truncation / 2;
  const unsigned long i2 = truncation;
  const BigFloat span(i2 - i1);
  scan.rate_floor =
      (log_term(f, i2, kappa, true) - log_term(f, i1, kappa, true)) / span;
  scan.rate_continuous =
      (log_term(f, i2, kappa, false) - log_term(f, i1, kappa, false)) / span;

  // Partial sum with early stop once the terms stop mattering.
  BigFloat sum(0);
  const BigFloat cutoff = pow10(-40);
  for (unsigned long i = 1; i <= truncation; ++i) {
    const BigFloat term = exp(log_term(f, i, kappa, true));
    sum += term;
    if (i >= 100 && term < cutoff * sum) {
      break;
    }
  }
  scan.partial_sum = sum;
  return scan;
}

}  // namespace

AdmissibilityReport check_summability(const PrescribedEstimator& f) {
  return check_summability(f, default_kappa_grid(), 1200);
}

AdmissibilityReport check_summability(const PrescribedEstimator& f,
                                      const std::vector<BigFloat>& kappa_grid,
                                      unsigned long truncation) {
  if (kappa_grid.empty()) {
    throw DomainError("kappa grid must be nonempty");
  }
  for (const BigFloat& kappa : kappa_grid) {
    if (kappa < BigFloat(1)) {
      throw DomainError("kappa values must be >= 1");
    }
  }
  if (truncation < 100) {
    throw DomainError("truncation must be at least 100");
  }

  AdmissibilityReport report;
  std::ostringstream diag;

  if (f.saturates()) {
    // Finitely many support points: the limiting prior is a finite mixture,
    // properness is trivial and no tail condition is needed.
    const unsigned long limit = std::min(f.c0(), truncation);
    BigFloat sum(0);
    for (unsigned long i = 1; i <= limit; ++i) {
      sum += exp(BigFloat(evaluate(f, i)));
    }
    report.admissible = true;
    report.kappa_star = BigFloat(1);
    report.partial_sum = sum;
    report.asymptotic_rate = BigFloat(0);
    diag << f.describe() << ": support is finite (saturation at c0=" << f.c0()
         << "), summability holds trivially; partial sum over i in [1:" << limit
         << "] at kappa=1.";
    report.diagnostics = diag.str();
    return report;
  }

  // Increasing-forever estimators are affine by construction. Scan the grid
  // plus the analytic optimum e.
  std::vector<BigFloat> grid = kappa_grid;
  grid.push_back(exp(BigFloat(1)));

  bool have_best = false;
  std::size_t best_index = 0;
  BigFloat best_rate;
  bool grid_admissible_floor = false;
  bool grid_admissible_continuous = false;

  diag << f.describe() << ", term growth rates over the kappa grid "
       << "(negative rate = geometric decay):\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const KappaScan scan = scan_kappa(f, grid[g], truncation);
    diag << "  kappa=" << grid[g].str_general(6)
         << "  rate_floor=" << scan.rate_floor.str_general(6)
         << "  rate_continuous=" << scan.rate_continuous.str_general(6)
         << "  partial_sum=" << scan.partial_sum.str_general(6) << "\n";
    if (sign_of(scan.rate_floor) < 0) grid_admissible_floor = true;
    if (sign_of(scan.rate_continuous) < 0) grid_admissible_continuous = true;
    if (!have_best || scan.rate_floor < best_rate) {
      have_best = true;
      best_rate = scan.rate_floor;
      best_index = g;
    }
  }

  // Closed form for the affine family: the terms behave like
  // e^{(a - ln(kappa)/kappa) i}, minimized at kappa = e, so the series decays
  // for some kappa exactly when a < 1/e.
  const BigFloat e_const = exp(BigFloat(1));
  const BigFloat analytic_rate = BigFloat(f.a()) - BigFloat(1) / e_const;
  const bool analytic_admissible = sign_of(analytic_rate) < 0;

  report.admissible = analytic_admissible;
  report.kappa_star = analytic_admissible ? e_const : grid[best_index];
  report.asymptotic_rate = analytic_rate;
  report.partial_sum = scan_kappa(f, report.kappa_star, truncation).partial_sum;

  diag << "affine closed form: rate a - ln(kappa)/kappa minimized at kappa=e, "
       << "a - 1/e = " << analytic_rate.str_general(6)
       << (analytic_admissible ? " < 0: admissible" : " >= 0: not admissible")
       << "\n";
  diag << "grid verdicts: floor exponent "
       << (grid_admissible_floor ? "admissible" : "not admissible")
       << ", continuous exponent "
       << (grid_admissible_continuous ? "admissible" : "not admissible")
       << "; conventions "
       << (grid_admissible_floor == grid_admissible_continuous ? "agree" : "disagree")
       << ".";
  report.diagnostics = diag.str();
  return report;
}

}  // namespace medprior
