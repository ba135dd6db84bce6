#pragma once

#include <mpfr.h>

#include <cstddef>
#include <string>

#include "medprior/rational.hpp"

namespace medprior {

// Arbitrary-precision binary floating point backed by MPFR, rounded to
// nearest. Every value carries its own mantissa precision; the result of a
// binary operation uses the wider of the two operand precisions, so precision
// is sticky upward and never degrades silently mid-computation.
class BigFloat {
 public:
  static constexpr unsigned kMinBits = 64;

  // Process-wide default precision (bits) for values that do not name one.
  // Starts at 256. Setting below kMinBits throws DomainError.
  static unsigned default_bits();
  static void set_default_bits(unsigned bits);

  BigFloat();  // zero at the default precision
  explicit BigFloat(int value, unsigned bits = 0);  // bits==0: default
  explicit BigFloat(long value, unsigned bits = 0);
  explicit BigFloat(unsigned long value, unsigned bits = 0);
  explicit BigFloat(double value, unsigned bits = 0);
  explicit BigFloat(const Rational& value, unsigned bits = 0);
  // Parses decimal text ("0.5", "1e-20"). Throws DomainError on junk.
  explicit BigFloat(const std::string& decimal, unsigned bits = 0);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  unsigned precision_bits() const;
  // The same numeric value re-rounded to `bits` bits of mantissa.
  BigFloat with_precision(unsigned bits) const;

  bool is_zero() const;
  double to_double() const;
  // floor(x) as an unsigned integer; DomainError when negative or too large.
  unsigned long floor_ulong() const;

  // "d.ddd...e±xx" with exactly `significant` significant digits.
  std::string str_scientific(std::size_t significant) const;
  // Shortest mixed form at `significant` significant digits (trailing zeros
  // stripped), like printf %g.
  std::string str_general(std::size_t significant) const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend bool operator<(const BigFloat& a, const BigFloat& b);
  friend bool operator<=(const BigFloat& a, const BigFloat& b);
  friend bool operator>(const BigFloat& a, const BigFloat& b);
  friend bool operator>=(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend bool operator!=(const BigFloat& a, const BigFloat& b);

  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);      // requires x > 0
  friend BigFloat lngamma(const BigFloat& x);  // requires x > 0
  friend BigFloat sqrt(const BigFloat& x);     // requires x >= 0
  friend BigFloat floor(const BigFloat& x);
  friend BigFloat pow_ui(const BigFloat& base, unsigned long exponent);
  friend BigFloat abs_val(const BigFloat& x);
  friend int sign_of(const BigFloat& x);

  mpfr_srcptr raw() const { return value_; }

 private:
  struct RawTag {};
  BigFloat(RawTag, mpfr_prec_t bits);  // uninitialized payload, given precision

  mpfr_t value_;
};

// Namespace-scope redeclarations of the hidden friends, so qualified calls
// (medprior::abs_val and friends) resolve alongside the Rational overloads.
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat lngamma(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat pow_ui(const BigFloat& base, unsigned long exponent);
BigFloat abs_val(const BigFloat& x);
int sign_of(const BigFloat& x);

// 10^exponent at the given precision (default precision when bits == 0).
BigFloat pow10(long exponent, unsigned bits = 0);

}  // namespace medprior
