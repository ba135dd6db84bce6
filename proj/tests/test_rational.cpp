#include <catch2/catch_amalgamated.hpp>

#include "medprior/errors.hpp"
#include "medprior/rational.hpp"

using medprior::DomainError;
using medprior::Rational;

TEST_CASE("rational_from_string accepts integers, fractions, and decimals",
          "[rational]") {
  CHECK(medprior::rational_from_string("7") == Rational(7));
  CHECK(medprior::rational_from_string("-3/4") == Rational(-3, 4));
  CHECK(medprior::rational_from_string("0.25") == Rational(1, 4));
  CHECK(medprior::rational_from_string("2.5e-3") == Rational(1, 400));
  CHECK(medprior::rational_from_string("1e2") == Rational(100));
  CHECK(medprior::rational_from_string("-0.3") == Rational(-3, 10));
  CHECK(medprior::rational_from_string(" 1/2 ") == Rational(1, 2));
}

TEST_CASE("rational_from_string rejects malformed input", "[rational]") {
  CHECK_THROWS_AS(medprior::rational_from_string(""), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("abc"), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("1/0"), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("1.2.3"), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("1e"), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("0.5junk"), DomainError);
  CHECK_THROWS_AS(medprior::rational_from_string("1e2000000"), DomainError);
}

TEST_CASE("to_fraction_string round-trips through the parser", "[rational]") {
  for (const char* text : {"3/10", "-3/4", "7", "0", "1603/6681"}) {
    const Rational q = medprior::rational_from_string(text);
    CHECK(medprior::rational_from_string(medprior::to_fraction_string(q)) == q);
  }
  CHECK(medprior::to_fraction_string(Rational(3, 10)) == "3/10");
  CHECK(medprior::to_fraction_string(Rational(7)) == "7");
}

TEST_CASE("to_decimal_string is exact for terminating expansions",
          "[rational]") {
  CHECK(medprior::to_decimal_string(Rational(3, 10)) == "0.3");
  CHECK(medprior::to_decimal_string(Rational(1, 8)) == "0.125");
  CHECK(medprior::to_decimal_string(Rational(1, 1024)) == "0.0009765625");
  CHECK(medprior::to_decimal_string(Rational(-1, 4)) == "-0.25");
  CHECK(medprior::to_decimal_string(Rational(7)) == "7");
  CHECK(medprior::to_decimal_string(Rational(0)) == "0");
  CHECK(medprior::to_decimal_string(Rational(27, 50)) == "0.54");
}

TEST_CASE("to_decimal_string rounds repeating expansions", "[rational]") {
  CHECK(medprior::to_decimal_string(Rational(1, 3)) == "0.333333333333333");
  CHECK(medprior::to_decimal_string(Rational(2, 3)) == "0.666666666666667");
  CHECK(medprior::to_decimal_string(Rational(1, 7), 6) == "0.142857");
  CHECK(medprior::to_decimal_string(Rational(6, 7), 6) == "0.857143");
  CHECK(medprior::to_decimal_string(Rational(-2, 3), 3) == "-0.667");
  CHECK(medprior::to_decimal_string(Rational(1, 300), 3) == "0.00333");
}

TEST_CASE("has_terminating_decimal distinguishes denominators", "[rational]") {
  CHECK(medprior::has_terminating_decimal(Rational(3, 10)));
  CHECK(medprior::has_terminating_decimal(Rational(1, 64)));
  CHECK_FALSE(medprior::has_terminating_decimal(Rational(1, 3)));
  CHECK_FALSE(medprior::has_terminating_decimal(Rational(1603, 6681)));
}

TEST_CASE("pow_ui raises rationals to integer powers", "[rational]") {
  CHECK(medprior::pow_ui(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(medprior::pow_ui(Rational(2, 3), 0) == Rational(1));
  CHECK(medprior::pow_ui(Rational(-1, 2), 2) == Rational(1, 4));
}

TEST_CASE("abs_val and sign_of behave on rationals", "[rational]") {
  CHECK(medprior::abs_val(Rational(-3, 4)) == Rational(3, 4));
  CHECK(medprior::sign_of(Rational(-3, 4)) == -1);
  CHECK(medprior::sign_of(Rational(0)) == 0);
  CHECK(medprior::sign_of(Rational(5)) == 1);
}
