#include "medprior/gamma_baseline.hpp"

#include <utility>

#include "medprior/errors.hpp"
#include "medprior/incomplete_gamma.hpp"

namespace medprior {

GammaPrior::GammaPrior(Rational theta, Rational alpha)
    : theta_(std::move(theta)), alpha_(std::move(alpha)) {
  theta_.canonicalize();
  alpha_.canonicalize();
}

GammaPrior GammaPrior::from_mean_coefficients(const Rational& a,
                                              const Rational& b) {
  if (!(a > 0) || !(a < 1)) {
    throw DomainError("mean slope a must lie in (0, 1) for a gamma prior");
  }
  if (!(b > 0)) {
    throw DomainError("mean intercept b must be positive");
  }
  return GammaPrior(Rational(b / a), Rational((1 - a) / a));
}

GammaPrior GammaPrior::from_shape_rate(const Rational& theta,
                                       const Rational& alpha) {
  if (!(theta > 0)) {
    throw DomainError("shape must be positive");
  }
  if (!(alpha > 0)) {
    throw DomainError("rate must be positive");
  }
  return GammaPrior(theta, alpha);
}

Rational GammaPrior::mean_slope() const {
  Rational a = Rational(1) / (alpha_ + 1);
  a.canonicalize();
  return a;
}

Rational GammaPrior::mean_intercept() const {
  Rational b = theta_ / (alpha_ + 1);
  b.canonicalize();
  return b;
}

Rational conditional_mean(const GammaPrior& g, unsigned long y) {
  Rational mean = (g.shape() + y) / (g.rate() + 1);
  mean.canonicalize();
  return mean;
}

namespace {

// Median of Gamma(theta + y, alpha + 1) with an optional bracketing hint
// (in the rate-1 coordinate, i.e. a previous inverse result).
BigFloat median_with_hint(const GammaPrior& g, unsigned long y, unsigned wp,
                          const BigFloat* hint, BigFloat* raw_out) {
  const Rational shape_q = g.shape() + y;
  const BigFloat s(shape_q, wp);
  const BigFloat half(Rational(1, 2), wp);

  BigFloat guess = s;
  if (hint != nullptr) {
    guess = *hint;
  } else if (s > BigFloat(1, wp)) {
    guess = s - BigFloat(Rational(1, 3), wp);  // median of Gamma(s,1) ~ s - 1/3
  }
  const BigFloat raw = inverse_regularized_lower_incomplete_gamma(s, half, guess);
  if (raw_out != nullptr) {
    *raw_out = raw;
  }
  return raw / BigFloat(Rational(g.rate() + 1), wp);
}

}  // namespace

BigFloat conditional_median(const GammaPrior& g, unsigned long y, unsigned bits) {
  const unsigned wp = bits == 0 ? BigFloat::default_bits() : bits;
  return median_with_hint(g, y, wp, nullptr, nullptr);
}

std::vector<BigFloat> median_mean_gap_curve(const GammaPrior& g,
                                            unsigned long y_max, unsigned bits) {
  const unsigned wp = bits == 0 ? BigFloat::default_bits() : bits;
  std::vector<BigFloat> gaps;
  gaps.reserve(y_max + 1);

  BigFloat raw(0, wp);
  for (unsigned long y = 0; y <= y_max; ++y) {
    // The rate-1 median grows by roughly 1 per count, so the previous point
    // shifted up makes a tight starting bracket.
    const BigFloat hint = raw + BigFloat(1, wp);
    const BigFloat median = median_with_hint(g, y, wp, y == 0 ? nullptr : &hint, &raw);
    gaps.push_back(median - BigFloat(conditional_mean(g, y), wp));
  }
  return gaps;
}

BigFloat prior_cdf(const GammaPrior& g, const BigFloat& x) {
  const unsigned wp = static_cast<unsigned>(x.precision_bits());
  return regularized_lower_incomplete_gamma(BigFloat(g.shape(), wp),
                                            BigFloat(g.rate(), wp) * x);
}

}  // namespace medprior
