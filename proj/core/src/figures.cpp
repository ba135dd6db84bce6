#include "medprior/figures.hpp"

#include <cstddef>
#include <string>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/gamma_baseline.hpp"
#include "medprior/incomplete_gamma.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/posterior.hpp"

namespace medprior {

std::string write_csv(const FigureTable& table) {
  if (table.header.empty()) {
    throw DomainError("figure table must have a header");
  }
  std::string out;
  const auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += cells[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw DomainError("figure table is not rectangular");
    }
    append_row(row);
  }
  return out;
}

FigureTable gap_table(const Rational& a, const Rational& b, unsigned long y_max,
                      unsigned bits) {
  const GammaPrior g = GammaPrior::from_mean_coefficients(a, b);
  const std::vector<BigFloat> gaps = median_mean_gap_curve(g, y_max, bits);

  FigureTable table;
  table.header = {"y", "gap"};
  for (unsigned long y = 0; y <= y_max; ++y) {
    table.rows.push_back({std::to_string(y), gaps[y].str_general(15)});
  }
  return table;
}

FigureTable medians_table(const std::vector<unsigned long>& Ms, const Rational& a,
                          const Rational& b, unsigned long y_max) {
  if (Ms.empty()) {
    throw DomainError("at least one truncation level is required");
  }
  const PrescribedEstimator f = PrescribedEstimator::affine(a, b);

  FigureTable table;
  table.header = {"y"};
  std::vector<MomentSolution<Rational>> solutions;
  solutions.reserve(Ms.size());
  for (unsigned long M : Ms) {
    table.header.push_back("med_M" + std::to_string(M));
    solutions.push_back(solve_direct<Rational>(f, M));
  }

  for (unsigned long y = 0; y <= y_max; ++y) {
    std::vector<std::string> row;
    row.reserve(Ms.size() + 1);
    row.push_back(std::to_string(y));
    for (const auto& sol : solutions) {
      row.push_back(to_decimal_string(posterior_of_tilt(sol, y).median));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

FigureTable cdf_table(const std::vector<unsigned long>& Ms, const Rational& a,
                      const Rational& b, unsigned bits) {
  if (Ms.empty()) {
    throw DomainError("at least one truncation level is required");
  }
  const unsigned wp = bits == 0 ? BigFloat::default_bits() : bits;
  const PrescribedEstimator f = PrescribedEstimator::affine(a, b);
  const GammaPrior g = GammaPrior::from_mean_coefficients(a, b);

  FigureTable table;
  table.header = {"series", "x", "cdf"};

  Rational w_max(0);
  for (unsigned long M : Ms) {
    const MomentSolution<Rational> sol = solve_direct<Rational>(f, M);
    const DiscretePrior<BigFloat> tilted = tilt_to_prior(sol, wp);
    const std::string series = "tilted_M" + std::to_string(M);
    BigFloat running(0, wp);
    for (std::size_t i = 0; i < tilted.support.size(); ++i) {
      running += tilted.weights[i];
      table.rows.push_back(
          {series, tilted.support[i].str_general(15), running.str_general(15)});
    }
    const Rational top = evaluate(f, M);
    if (w_max < top) {
      w_max = top;
    }
  }

  // Gamma samples: a uniform sweep past the largest atom, extended
  // geometrically until the 1 - 1e-12 quantile so the curve reaches 1.
  const BigFloat uniform_end = BigFloat(w_max, wp) * BigFloat(Rational(6, 5), wp);
  const BigFloat x_hi =
      inverse_regularized_lower_incomplete_gamma(
          BigFloat(g.shape(), wp), BigFloat(1, wp) - pow10(-12, wp)) /
      BigFloat(g.rate(), wp);

  std::vector<BigFloat> xs;
  const unsigned long uniform_steps = 160;
  for (unsigned long k = 0; k <= uniform_steps; ++k) {
    xs.push_back(uniform_end * BigFloat(k, wp) / BigFloat(uniform_steps, wp));
  }
  if (uniform_end < x_hi) {
    const BigFloat factor(Rational(5, 4), wp);
    BigFloat x = uniform_end;
    while (true) {
      x = x * factor;
      if (!(x < x_hi)) {
        xs.push_back(x_hi);
        break;
      }
      xs.push_back(x);
    }
  }
  for (const BigFloat& x : xs) {
    table.rows.push_back(
        {"gamma", x.str_general(15), prior_cdf(g, x).str_general(15)});
  }
  return table;
}

}  // namespace medprior
