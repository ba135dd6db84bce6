#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/posterior.hpp"

using medprior::BigFloat;
using medprior::DiscretePrior;
using medprior::DomainError;
using medprior::InternalError;
using medprior::PrescribedEstimator;
using medprior::Rational;

namespace {

const PrescribedEstimator kF =
    PrescribedEstimator::affine(Rational(3, 10), Rational(3, 10));

Rational R(const char* text) { return medprior::rational_from_string(text); }

}  // namespace

TEST_CASE("posterior pmfs of the tilted prior are exact", "[posterior]") {
  const auto sol = medprior::solve_direct<Rational>(kF, 2);

  const auto s0 = medprior::posterior_of_tilt(sol, 0);
  CHECK(s0.pmf == std::vector<Rational>{R("1/2"), R("1/5"), R("3/10")});
  CHECK(s0.cdf.back() == Rational(1));
  CHECK(s0.median == R("3/10"));
  CHECK(s0.mean == R("27/50"));

  const auto s1 = medprior::posterior_of_tilt(sol, 1);
  CHECK(s1.pmf == std::vector<Rational>{R("5/18"), R("2/9"), R("1/2")});
  CHECK(s1.cdf.back() == Rational(1));
  CHECK(s1.median == R("3/5"));
  CHECK(s1.mean == R("2/3"));

  const auto s2 = medprior::posterior_of_tilt(sol, 2);
  CHECK(s2.pmf == std::vector<Rational>{R("1/8"), R("1/5"), R("27/40")});
  CHECK(s2.median == R("9/10"));
  CHECK(s2.mean == R("153/200"));

  // Beyond the top atom the median saturates.
  CHECK(medprior::posterior_of_tilt(sol, 3).median == R("9/10"));
  CHECK(medprior::posterior_of_tilt(sol, 4).median == R("9/10"));

  const auto sol1 = medprior::solve_direct<Rational>(kF, 1);
  CHECK(medprior::conditional_mean(sol1, 0) == R("9/20"));
}

TEST_CASE("guaranteed medians are exact ties", "[posterior]") {
  for (unsigned long M : {1ul, 2ul, 4ul, 8ul}) {
    const auto sol = medprior::solve_direct<Rational>(kF, M);
    for (unsigned long y = 0; y < M; ++y) {
      const auto summary = medprior::posterior_of_tilt(sol, y);
      INFO("M=" << M << " y=" << y);
      // The median is the y-th atom and the cdf lands exactly on 1/2 there:
      // this is the moment condition seen through the posterior.
      CHECK(summary.median == sol.support[y]);
      CHECK(summary.cdf[y] == R("1/2"));
    }
  }
}

TEST_CASE("medians are monotone and capped by the top atom", "[posterior]") {
  for (unsigned long M : {1ul, 2ul, 4ul, 8ul}) {
    const auto sol = medprior::solve_direct<Rational>(kF, M);
    Rational previous(0);
    for (unsigned long y = 0; y <= 2 * M; ++y) {
      const auto summary = medprior::posterior_of_tilt(sol, y);
      INFO("M=" << M << " y=" << y);
      CHECK(summary.median >= previous);
      CHECK(summary.median <= sol.support.back());
      previous = summary.median;
    }
  }
}

TEST_CASE("median report distinguishes guarantee from information", "[posterior]") {
  const auto sol = medprior::solve_direct<Rational>(kF, 4);
  const auto report = medprior::verify_median_property(sol, kF, 7);
  REQUIRE(report.rows.size() == 8);
  CHECK(report.guaranteed_range_ok);
  for (const auto& row : report.rows) {
    CHECK(row.target == medprior::evaluate(kF, row.y));
    CHECK(row.within_guarantee == (row.y < 4));
    if (row.within_guarantee) {
      CHECK(row.pass);
    }
  }
  // y=4 still hits f(4)=3/2 (the top atom); y>=5 exceeds the support.
  CHECK(report.rows[4].pass);
  CHECK_FALSE(report.rows[5].pass);
  CHECK(report.largest_pass_y == 4);

  // Too-short scan cannot certify the guaranteed range.
  CHECK_FALSE(medprior::verify_median_property(sol, kF, 2).guaranteed_range_ok);
}

TEST_CASE("moment imbalances vanish exactly", "[posterior]") {
  for (unsigned long M = 1; M <= 8; ++M) {
    const auto sol = medprior::solve_direct<Rational>(kF, M);
    const auto imbalance = medprior::moment_condition_check(sol, kF);
    REQUIRE(imbalance.size() == M);
    for (const auto& value : imbalance) {
      INFO("M=" << M);
      CHECK(medprior::sign_of(value) == 0);
    }
  }
}

TEST_CASE("the tilted prior satisfies the same moment conditions", "[posterior]") {
  const auto sol = medprior::solve_direct<Rational>(kF, 2);
  const auto tilted = medprior::tilt_to_prior(sol);
  const auto imbalance = medprior::moment_condition_check(tilted, kF, 2);
  const BigFloat tol = medprior::pow10(-70);
  REQUIRE(imbalance.size() == 2);
  for (const auto& value : imbalance) {
    CHECK(medprior::abs_val(value) < tol);
  }
}

TEST_CASE("posterior over the tilted prior recovers the medians", "[posterior]") {
  const BigFloat tol = medprior::pow10(-70);
  for (unsigned long M : {1ul, 2ul, 4ul}) {
    const auto sol = medprior::solve_direct<Rational>(kF, M);
    const auto tilted = medprior::tilt_to_prior(sol);
    for (unsigned long y = 0; y < M; ++y) {
      const auto summary = medprior::posterior(tilted, y);
      const BigFloat target(medprior::evaluate(kF, y));
      INFO("M=" << M << " y=" << y);
      CHECK(medprior::abs_val(summary.median - target) < tol);
      CHECK(medprior::abs_val(summary.cdf.back() - BigFloat(1)) < tol);
    }
  }
  // Means agree across the two routes: E[X|y] from the tilted prior equals
  // the tilt-free computation on the solution arrays.
  const auto sol2 = medprior::solve_direct<Rational>(kF, 2);
  const auto tilted2 = medprior::tilt_to_prior(sol2);
  const BigFloat mean_exact(medprior::conditional_mean(sol2, 1));
  CHECK(medprior::abs_val(medprior::conditional_mean(tilted2, 1) - mean_exact) <
        tol);
}

TEST_CASE("posterior rejects malformed priors", "[posterior]") {
  DiscretePrior<BigFloat> empty;
  CHECK_THROWS_AS(medprior::posterior(empty, 0), DomainError);

  DiscretePrior<BigFloat> unsorted{{BigFloat(2), BigFloat(1)},
                                   {BigFloat(Rational(1, 2)), BigFloat(Rational(1, 2))},
                                   "P_X"};
  CHECK_THROWS_AS(medprior::posterior(unsorted, 0), DomainError);

  DiscretePrior<BigFloat> negative{{BigFloat(1), BigFloat(2)},
                                   {BigFloat(Rational(-3, 5)), BigFloat(Rational(8, 5))},
                                   "P_X"};
  CHECK_THROWS_AS(medprior::posterior(negative, 0), InternalError);

  medprior::MomentSolution<Rational> hollow;
  CHECK_THROWS_AS(medprior::posterior_of_tilt(hollow, 0), DomainError);
}
