#pragma once

#include <cstddef>

#include "medprior/bigfloat.hpp"

namespace medprior {

// Precision/tolerance bundle threaded through solvers and verification.
// The tolerance defaults to 1e-20 at 256-bit precision and scales as
// 10^(-20 * bits/256): more mantissa means proportionally tighter acceptance.
struct PrecisionConfig {
  unsigned bits;
  BigFloat tolerance;

  explicit PrecisionConfig(unsigned bits_in = BigFloat::default_bits());
  PrecisionConfig(unsigned bits_in, const BigFloat& tolerance_in);
};

// Decimal digits that pin a bits-wide BigFloat exactly (binary -> decimal ->
// binary round trip): ceil(bits * log10(2)) + 2.
std::size_t digits_for_bits(unsigned bits);

}  // namespace medprior
