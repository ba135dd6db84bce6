#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace medprior {

// Exact rational arithmetic backed by GMP. Field operations never round, so
// the badly conditioned moment systems solve exactly; the cost surfaces as
// bignum growth rather than lost digits.
using Rational = mpq_class;

// Parses an exact rational from "7", "-3/4", "0.25", "2.5e-3" style text.
// Throws DomainError on malformed input or a zero denominator.
Rational rational_from_string(const std::string& text);

// Canonical fraction form: "3/10", "-1/3", or "7" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

// Decimal form. When the reduced denominator is 2^a * 5^b the expansion
// terminates and is emitted exactly (and in full, regardless of length);
// otherwise it is rounded half-to-even at `significant` significant digits.
std::string to_decimal_string(const Rational& q, std::size_t significant = 15);

// True when the decimal expansion of q terminates.
bool has_terminating_decimal(const Rational& q);

// Arithmetic helpers spelled identically for both scalar backends so that
// generic code can use one vocabulary.
Rational pow_ui(const Rational& base, unsigned long exponent);

inline Rational abs_val(const Rational& q) { return Rational(abs(q)); }
inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace medprior
