#pragma once

#include <cstddef>
#include <vector>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/precision.hpp"
#include "medprior/scalar.hpp"

namespace medprior {

// Posterior of the hidden parameter after observing a count y, over the
// atoms of a discrete prior.
template <Scalar T>
struct PosteriorSummary {
  unsigned long y = 0;
  std::vector<T> pmf;  // over the prior support, in order
  std::vector<T> cdf;  // running sums of pmf; last entry is 1
  T median;            // left inverse of the cdf at 1/2
  T mean;
};

namespace detail {

// The zero-tolerance convention: exact backend medians are exact tie cases
// (cdf equals 1/2 on the nose), so equality must count; the inexact backend
// needs slack for rounding in the cdf.
template <Scalar T>
T default_tie_tol(const std::vector<T>& weights) {
  if constexpr (kExactBackend<T>) {
    (void)weights;
    return T(0);
  } else {
    return PrecisionConfig(
               static_cast<unsigned>(weights.front().precision_bits()))
        .tolerance;
  }
}

template <Scalar T>
T convert_like(const Rational& q, const std::vector<T>& like) {
  if constexpr (kExactBackend<T>) {
    (void)like;
    return q;
  } else {
    return BigFloat(q, static_cast<unsigned>(like.front().precision_bits()));
  }
}

// Normalizes unnormalized masses over `support` into a full summary.
template <Scalar T>
PosteriorSummary<T> summarize(unsigned long y, const std::vector<T>& support,
                              std::vector<T> unnorm, const T& tie_tol) {
  T total = from_ulong<T>(0);
  for (T& mass : unnorm) {
    if (sign_of(mass) < 0) {
      if (abs_val(mass) > tie_tol) {
        throw InternalError("posterior mass is negative beyond tolerance");
      }
      mass = from_ulong<T>(0);  // rounding dust
    }
    total = total + mass;
  }
  if (!(sign_of(total) > 0)) {
    throw InternalError("posterior normalizer is not positive");
  }

  PosteriorSummary<T> out;
  out.y = y;
  out.pmf.reserve(unnorm.size());
  out.cdf.reserve(unnorm.size());
  T running = from_ulong<T>(0);
  T mean = from_ulong<T>(0);
  for (std::size_t i = 0; i < unnorm.size(); ++i) {
    T p = unnorm[i] / total;
    running = running + p;
    mean = mean + p * support[i];
    out.pmf.push_back(std::move(p));
    out.cdf.push_back(running);
  }
  out.mean = mean;

  const T threshold = from_rational<T>(Rational(1, 2)) - tie_tol;
  out.median = support.back();
  for (std::size_t i = 0; i < out.cdf.size(); ++i) {
    if (!(out.cdf[i] < threshold)) {
      out.median = support[i];
      break;
    }
  }
  return out;
}

template <Scalar T>
void require_prior_shape(const DiscretePrior<T>& prior) {
  if (prior.support.empty() || prior.support.size() != prior.weights.size()) {
    throw DomainError("prior must be non-empty with matching arrays");
  }
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    if (sign_of(prior.support[i]) <= 0) {
      throw DomainError("prior support points must be positive");
    }
    if (i > 0 && !(prior.support[i - 1] < prior.support[i])) {
      throw DomainError("prior support points must be strictly increasing");
    }
  }
}

}  // namespace detail

// Posterior under the count-y likelihood x^y e^{-x} / y! (the 1/y! cancels
// in normalization).
PosteriorSummary<BigFloat> posterior(const DiscretePrior<BigFloat>& prior,
                                     unsigned long y, const BigFloat& tie_tol);
PosteriorSummary<BigFloat> posterior(const DiscretePrior<BigFloat>& prior,
                                     unsigned long y);

// Posterior of the tilted prior, evaluated without leaving the solution's
// backend: against dP_X ∝ e^w dP_W the likelihood's e^{-w} cancels, so the
// posterior pmf is proportional to p_i w_i^y. Exact under Rational.
template <Scalar T>
PosteriorSummary<T> posterior_of_tilt(const MomentSolution<T>& sol,
                                      unsigned long y, const T& tie_tol) {
  if (sol.support.empty() || sol.support.size() != sol.weights.size()) {
    throw DomainError("solution must be non-empty with matching arrays");
  }
  std::vector<T> unnorm;
  unnorm.reserve(sol.support.size());
  for (std::size_t i = 0; i < sol.support.size(); ++i) {
    unnorm.push_back(sol.weights[i] * pow_ui(sol.support[i], y));
  }
  return detail::summarize(y, sol.support, std::move(unnorm), tie_tol);
}

template <Scalar T>
PosteriorSummary<T> posterior_of_tilt(const MomentSolution<T>& sol,
                                      unsigned long y) {
  if (sol.weights.empty()) {
    throw DomainError("solution must be non-empty");
  }
  return posterior_of_tilt(sol, y, detail::default_tie_tol(sol.weights));
}

// One row per observed count y: does the posterior median hit the prescribed
// value f(y)? The construction guarantees this for y in [0:M-1]; larger y is
// reported for information (the median saturates near the last atom).
template <Scalar T>
struct MedianCheckRow {
  unsigned long y = 0;
  T median;
  Rational target;  // f(y)
  bool within_guarantee = false;
  bool pass = false;
};

template <Scalar T>
struct MedianCheckReport {
  std::vector<MedianCheckRow<T>> rows;
  bool guaranteed_range_ok = false;  // every y in [0:M-1] checked and passed
  long long largest_pass_y = -1;     // largest checked y that passed, or -1
};

template <Scalar T>
MedianCheckReport<T> verify_median_property(const MomentSolution<T>& sol,
                                            const PrescribedEstimator& f,
                                            unsigned long y_max) {
  MedianCheckReport<T> report;
  report.rows.reserve(y_max + 1);
  bool guaranteed_all = true;
  for (unsigned long y = 0; y <= y_max; ++y) {
    const PosteriorSummary<T> summary = posterior_of_tilt(sol, y);
    MedianCheckRow<T> row;
    row.y = y;
    row.median = summary.median;
    row.target = evaluate(f, y);
    row.within_guarantee = y < sol.M;

    const T target_t = detail::convert_like(row.target, sol.support);
    if constexpr (kExactBackend<T>) {
      row.pass = row.median == target_t;
    } else {
      const BigFloat tol = detail::default_tie_tol(sol.weights);
      row.pass = !(abs_val(row.median - target_t) > tol);
    }
    if (row.pass) {
      report.largest_pass_y = static_cast<long long>(y);
    }
    if (row.within_guarantee && !row.pass) {
      guaranteed_all = false;
    }
    report.rows.push_back(std::move(row));
  }
  report.guaranteed_range_ok = guaranteed_all && y_max + 1 >= sol.M;
  return report;
}

// Signed imbalance of the moment condition at each y in [0:M-1], with the
// value partition: sum of p_i w_i^y over atoms w_i <= f(y), minus the sum
// over atoms w_i > f(y). Exactly zero under Rational.
template <Scalar T>
std::vector<T> moment_condition_check(const MomentSolution<T>& sol,
                                      const PrescribedEstimator& f) {
  std::vector<T> out;
  out.reserve(sol.M);
  for (unsigned long y = 0; y < sol.M; ++y) {
    const T threshold = detail::convert_like(evaluate(f, y), sol.support);
    T acc = from_ulong<T>(0);
    for (std::size_t i = 0; i < sol.support.size(); ++i) {
      const T moment = sol.weights[i] * pow_ui(sol.support[i], y);
      if (sol.support[i] <= threshold) {
        acc = acc + moment;
      } else {
        acc = acc - moment;
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// Same imbalance computed against a prior on X: the factor e^{-w} restores
// the untilted masses up to a common normalizer, so the zeros agree.
template <Scalar T>
std::vector<BigFloat> moment_condition_check(const DiscretePrior<T>& prior,
                                             const PrescribedEstimator& f,
                                             unsigned long M,
                                             unsigned bits = 0) {
  detail::require_prior_shape(prior);
  std::vector<BigFloat> out;
  out.reserve(M);
  for (unsigned long y = 0; y < M; ++y) {
    const BigFloat threshold(evaluate(f, y), bits);
    BigFloat acc(0, bits == 0 ? 0u : bits);
    for (std::size_t i = 0; i < prior.support.size(); ++i) {
      const BigFloat atom = detail::to_bigfloat(prior.support[i], bits);
      const BigFloat mass = detail::to_bigfloat(prior.weights[i], bits) *
                            pow_ui(atom, y) * exp(-atom);
      if (atom <= threshold) {
        acc = acc + mass;
      } else {
        acc = acc - mass;
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <Scalar T>
T conditional_mean(const MomentSolution<T>& sol, unsigned long y) {
  return posterior_of_tilt(sol, y).mean;
}

BigFloat conditional_mean(const DiscretePrior<BigFloat>& prior,
                          unsigned long y);

}  // namespace medprior
