#pragma once

#include <vector>

#include "medprior/bigfloat.hpp"
#include "medprior/rational.hpp"

namespace medprior {

// Gamma prior with shape theta and rate alpha: density proportional to
// x^(theta-1) e^(-alpha x). The conjugate family for the Poisson likelihood;
// after observing a count y the posterior is Gamma(theta + y, alpha + 1),
// so the posterior mean is affine in y:
//   E[X | y] = (theta + y) / (alpha + 1) = a y + b
// with a = 1/(1 + alpha) and b = theta/(1 + alpha). The posterior median has
// no closed form and sits strictly below the mean; the gap curve below is the
// reference this library's discrete constructions are compared against.
class GammaPrior {
 public:
  // From the affine coefficients: requires 0 < a < 1 and b > 0.
  static GammaPrior from_mean_coefficients(const Rational& a, const Rational& b);
  // Directly from shape and rate, both positive.
  static GammaPrior from_shape_rate(const Rational& theta, const Rational& alpha);

  const Rational& shape() const { return theta_; }
  const Rational& rate() const { return alpha_; }
  Rational mean_slope() const;      // a = 1/(1 + alpha)
  Rational mean_intercept() const;  // b = theta/(1 + alpha)

 private:
  GammaPrior(Rational theta, Rational alpha);

  Rational theta_;
  Rational alpha_;
};

// E[X | y] = (theta + y)/(alpha + 1), exact.
Rational conditional_mean(const GammaPrior& g, unsigned long y);

// Median of Gamma(theta + y, alpha + 1), i.e. the x with
// P(theta + y, (alpha + 1) x) = 1/2. bits == 0 uses the process default.
BigFloat conditional_median(const GammaPrior& g, unsigned long y,
                            unsigned bits = 0);

// gap(y) = median - mean for y in [0 : y_max], in order. The curve starts
// near (ln 2 - 1)/2 at y = 0 for a unit-scale posterior and approaches -a/3
// from below as y grows.
std::vector<BigFloat> median_mean_gap_curve(const GammaPrior& g,
                                            unsigned long y_max,
                                            unsigned bits = 0);

// Prior cdf F(x) = P(theta, alpha x); precision follows x.
BigFloat prior_cdf(const GammaPrior& g, const BigFloat& x);

}  // namespace medprior
