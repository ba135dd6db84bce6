#include "medprior/precision.hpp"

#include <cmath>

#include "medprior/errors.hpp"

namespace medprior {

namespace {

// 10^(-20 * bits/256) at `bits` bits. The exponent is an integer whenever
// bits is a multiple of 64 (in particular for the 256 default and every
// doubling of it); otherwise go through exp/log.
BigFloat default_tolerance(unsigned bits) {
  const unsigned long scaled = 5ul * bits;  // 20*bits/256 == 5*bits/64
  if (scaled % 64 == 0) {
    return pow10(-static_cast<long>(scaled / 64), bits);
  }
  Rational ratio(-static_cast<long>(scaled), 64);
  ratio.canonicalize();
  return exp(log(BigFloat(10, bits)) * BigFloat(ratio, bits));
}

}  // namespace

PrecisionConfig::PrecisionConfig(unsigned bits_in)
    : bits(bits_in), tolerance(default_tolerance(bits_in)) {
  if (bits < BigFloat::kMinBits) {
    throw DomainError("PrecisionConfig requires at least 64 bits");
  }
}

PrecisionConfig::PrecisionConfig(unsigned bits_in, const BigFloat& tolerance_in)
    : bits(bits_in), tolerance(tolerance_in) {
  if (bits < BigFloat::kMinBits) {
    throw DomainError("PrecisionConfig requires at least 64 bits");
  }
  if (!(tolerance > BigFloat(0))) {
    throw DomainError("PrecisionConfig tolerance must be positive");
  }
}

std::size_t digits_for_bits(unsigned bits) {
  return static_cast<std::size_t>(
             std::ceil(static_cast<double>(bits) * 0.30102999566398119521)) +
         2;
}

}  // namespace medprior
