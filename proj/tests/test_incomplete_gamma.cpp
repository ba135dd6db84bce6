#include <catch2/catch_amalgamated.hpp>

#include "medprior/bigfloat.hpp"
#include "medprior/errors.hpp"
#include "medprior/incomplete_gamma.hpp"
#include "medprior/rational.hpp"

using medprior::BigFloat;
using medprior::DomainError;
using medprior::Rational;

namespace {

const BigFloat kTight = medprior::pow10(-70);  // comfortable at 256 bits

BigFloat P(double s, double x) {
  return medprior::regularized_lower_incomplete_gamma(BigFloat(s), BigFloat(x));
}

}  // namespace

TEST_CASE("P(1, x) matches the exponential closed form", "[incgamma]") {
  // P(1, x) = 1 - e^{-x}
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const BigFloat expected = BigFloat(1) - exp(-BigFloat(x));
    CHECK(medprior::abs_val(P(1.0, x) - expected) < kTight);
  }
}

TEST_CASE("P(2, 1) matches 1 - 2/e", "[incgamma]") {
  const BigFloat expected = BigFloat(1) - BigFloat(2) * exp(-BigFloat(1));
  CHECK(medprior::abs_val(P(2.0, 1.0) - expected) < kTight);
  // spot decimal: 0.264241117657115
  CHECK(medprior::abs_val(P(2.0, 1.0) - BigFloat("0.264241117657115")) <
        medprior::pow10(-15));
}

TEST_CASE("P is monotone with correct endpoints", "[incgamma]") {
  CHECK(P(2.0, 0.0) == BigFloat(0));
  CHECK(P(2.0, 1.0) < P(2.0, 2.0));
  CHECK(P(2.0, 50.0) < BigFloat(1));
  CHECK(BigFloat(1) - P(2.0, 50.0) < medprior::pow10(-15));
  // Both expansion regimes: series (x < s+1) and continued fraction.
  CHECK(P(10.0, 5.0) < P(10.0, 15.0));
}

TEST_CASE("P rejects out-of-domain arguments", "[incgamma]") {
  CHECK_THROWS_AS(P(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(P(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(P(1.0, -0.5), DomainError);
}

TEST_CASE("inverse hits tabulated medians", "[incgamma]") {
  const BigFloat half(Rational(1, 2));
  // Median of Gamma(2, 1): 1.67834699001666
  const BigFloat med2 =
      medprior::inverse_regularized_lower_incomplete_gamma(BigFloat(2), half);
  CHECK(medprior::abs_val(med2 - BigFloat("1.67834699001666")) <
        medprior::pow10(-13));
  // Median of Gamma(1, 1) is ln 2 exactly.
  const BigFloat med1 =
      medprior::inverse_regularized_lower_incomplete_gamma(BigFloat(1), half);
  CHECK(medprior::abs_val(med1 - log(BigFloat(2))) < kTight);
}

TEST_CASE("inverse round-trips through the forward function", "[incgamma]") {
  for (double s : {0.5, 1.0, 2.0, 7.5, 40.0}) {
    for (double p : {0.01, 0.25, 0.5, 0.9, 0.999}) {
      const BigFloat x = medprior::inverse_regularized_lower_incomplete_gamma(
          BigFloat(s), BigFloat(p));
      CHECK(medprior::abs_val(
                medprior::regularized_lower_incomplete_gamma(BigFloat(s), x) -
                BigFloat(p)) < kTight);
    }
  }
}

TEST_CASE("inverse tolerates arbitrary starting guesses", "[incgamma]") {
  const BigFloat half(Rational(1, 2));
  const BigFloat reference =
      medprior::inverse_regularized_lower_incomplete_gamma(BigFloat(2), half);
  for (const char* guess : {"1e-30", "1e30", "1.7"}) {
    const BigFloat x = medprior::inverse_regularized_lower_incomplete_gamma(
        BigFloat(2), half, BigFloat(guess));
    CHECK(medprior::abs_val(x - reference) < kTight);
  }
}

TEST_CASE("inverse rejects out-of-range probabilities", "[incgamma]") {
  using medprior::inverse_regularized_lower_incomplete_gamma;
  CHECK_THROWS_AS(
      inverse_regularized_lower_incomplete_gamma(BigFloat(2), BigFloat(0)),
      DomainError);
  CHECK_THROWS_AS(
      inverse_regularized_lower_incomplete_gamma(BigFloat(2), BigFloat(1)),
      DomainError);
  CHECK_THROWS_AS(
      inverse_regularized_lower_incomplete_gamma(BigFloat(0), BigFloat(0.5)),
      DomainError);
}

TEST_CASE("precision scales with the operands", "[incgamma]") {
  const BigFloat s(2, 512);
  const BigFloat p(Rational(1, 2), 512);
  const BigFloat x = medprior::inverse_regularized_lower_incomplete_gamma(s, p);
  CHECK(medprior::abs_val(
            medprior::regularized_lower_incomplete_gamma(s, x) - p) <
        medprior::pow10(-140, 512));
}
