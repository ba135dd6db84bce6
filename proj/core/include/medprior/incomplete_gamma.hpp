#pragma once

#include "medprior/bigfloat.hpp"

namespace medprior {

// Regularized lower incomplete gamma function P(s, x) = γ(s, x) / Γ(s),
// monotone increasing in x with P(s, 0) = 0 and P(s, ∞) = 1. Evaluated by
// the power series for x < s + 1 and by a continued fraction (modified Lentz)
// for x >= s + 1, with guard bits on top of the operands' precision.
// Throws DomainError for s <= 0 or x < 0; NumericError if either expansion
// fails to converge within 10000 terms.
BigFloat regularized_lower_incomplete_gamma(const BigFloat& s, const BigFloat& x);

// Inverse of P(s, ·) at probability p ∈ (0, 1): returns x > 0 with
// P(s, x) = p to within the operands' precision (a few ulps). Bracketing
// plus bisection, refined by damped Newton steps once the bracket is safe;
// 10000-iteration cap, beyond which NumericError carries diagnostics.
BigFloat inverse_regularized_lower_incomplete_gamma(const BigFloat& s, const BigFloat& p);

// Same, with a positive starting guess (e.g. the previous point of a sweep);
// a bad guess costs a few extra bracketing steps but never the answer.
BigFloat inverse_regularized_lower_incomplete_gamma(const BigFloat& s, const BigFloat& p,
                                                    const BigFloat& initial_guess);

}  // namespace medprior
