#pragma once

#include <concepts>

#include "medprior/bigfloat.hpp"
#include "medprior/rational.hpp"

namespace medprior {

// The arithmetic interface generic solver/verification code relies on.
// Satisfied by Rational (exact) and BigFloat (configurable precision).
template <class T>
concept Scalar = requires(const T a, const T b, unsigned long k) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a < b } -> std::convertible_to<bool>;
  { a <= b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { pow_ui(a, k) } -> std::convertible_to<T>;
  { abs_val(a) } -> std::convertible_to<T>;
  { sign_of(a) } -> std::convertible_to<int>;
};

template <class T>
inline constexpr bool kExactBackend = false;
template <>
inline constexpr bool kExactBackend<Rational> = true;

// Backend-uniform conversions from the exact inputs. `bits` applies to the
// BigFloat backend only (0 = process default) and is ignored by Rational.
template <Scalar T>
T from_rational(const Rational& q, unsigned bits = 0);

template <>
inline Rational from_rational<Rational>(const Rational& q, unsigned) {
  return q;
}
template <>
inline BigFloat from_rational<BigFloat>(const Rational& q, unsigned bits) {
  return BigFloat(q, bits);
}

template <Scalar T>
T from_ulong(unsigned long n, unsigned bits = 0);

template <>
inline Rational from_ulong<Rational>(unsigned long n, unsigned) {
  return Rational(n);
}
template <>
inline BigFloat from_ulong<BigFloat>(unsigned long n, unsigned bits) {
  return BigFloat(n, bits);
}

}  // namespace medprior
