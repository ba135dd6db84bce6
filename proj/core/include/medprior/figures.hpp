#pragma once

#include <string>
#include <vector>

#include "medprior/bigfloat.hpp"
#include "medprior/rational.hpp"

namespace medprior {

// Rectangular table of decimal strings, rendered as CSV.
struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma separators, '.' decimal point, LF line endings, no padding. The
// output is deterministic byte-for-byte for fixed inputs and precision.
std::string write_csv(const FigureTable& table);

// Median-minus-mean gap of the gamma baseline prior with posterior mean
// a*y + b: columns (y, gap) for y in [0 : y_max].
FigureTable gap_table(const Rational& a, const Rational& b, unsigned long y_max,
                      unsigned bits = 0);

// Posterior medians of the tilted constructions, one column per truncation
// level: columns (y, med_M<m>...). Exact rational arithmetic throughout.
FigureTable medians_table(const std::vector<unsigned long>& Ms, const Rational& a,
                          const Rational& b, unsigned long y_max);

// Step-function cdf points of the tilted priors alongside samples of the
// matched gamma prior cdf, in long format: columns (series, x, cdf). The
// gamma samples run from 0 out to its 1 - 1e-12 quantile so the curve
// visibly reaches 1.
FigureTable cdf_table(const std::vector<unsigned long>& Ms, const Rational& a,
                      const Rational& b, unsigned bits = 0);

}  // namespace medprior
