#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/prior_file.hpp"

using medprior::BigFloat;
using medprior::DomainError;
using medprior::PrescribedEstimator;
using medprior::PriorFile;
using medprior::Rational;

namespace {

const PrescribedEstimator kF =
    PrescribedEstimator::affine(Rational(3, 10), Rational(3, 10));

PriorFile rational_file(unsigned long M, unsigned bits = 256) {
  const auto sol = medprior::solve_direct<Rational>(kF, M);
  const auto tilted = medprior::tilt_to_prior(sol, bits);
  return medprior::make_prior_file(kF, sol, tilted, bits);
}

PriorFile bigfloat_file(unsigned long M, unsigned bits = 256) {
  const auto sol = medprior::solve_direct<BigFloat>(kF, M);
  const auto tilted = medprior::tilt_to_prior(sol, bits);
  return medprior::make_prior_file(kF, sol, tilted, bits);
}

}  // namespace

TEST_CASE("prior files survive a serialize/parse round trip", "[prior_file]") {
  const PriorFile file = rational_file(2);
  const std::string text = medprior::serialize_prior_file(file);
  const PriorFile back = medprior::parse_prior_file(text);

  CHECK(back.format_version == 1);
  CHECK(back.estimator.kind == "affine");
  CHECK(back.estimator.a == Rational(3, 10));
  CHECK(back.estimator.b == Rational(3, 10));
  CHECK_FALSE(back.estimator.has_c0);
  CHECK(back.M == 2);
  CHECK(back.backend.kind == "rational");
  CHECK(back.backend.bits == 256);
  CHECK(back.support == file.support);
  CHECK(back.weights_pw == file.weights_pw);
  CHECK(back.weights_px == file.weights_px);
  CHECK(back.residuals == file.residuals);
  CHECK(back.support_exact == file.support_exact);
  CHECK(back.weights_pw_exact == file.weights_pw_exact);
  CHECK(back.residuals_exact == file.residuals_exact);

  CHECK(back.weights_pw_exact ==
        std::vector<std::string>{"1/2", "1/5", "3/10"});
  CHECK(back.weights_pw == std::vector<std::string>{"0.5", "0.2", "0.3"});
}

TEST_CASE("serialization is deterministic", "[prior_file]") {
  const PriorFile file = rational_file(4);
  CHECK(medprior::serialize_prior_file(file) ==
        medprior::serialize_prior_file(file));
  // and stable through a round trip
  const PriorFile back =
      medprior::parse_prior_file(medprior::serialize_prior_file(file));
  CHECK(medprior::serialize_prior_file(back) ==
        medprior::serialize_prior_file(file));
}

TEST_CASE("saturating estimators round-trip c0", "[prior_file]") {
  const auto sat =
      PrescribedEstimator::saturating_affine(Rational(3, 10), Rational(3, 10), 5);
  const auto sol = medprior::solve_direct<Rational>(sat, 5);
  const auto tilted = medprior::tilt_to_prior(sol);
  const PriorFile file = medprior::make_prior_file(sat, sol, tilted, 256);
  const PriorFile back =
      medprior::parse_prior_file(medprior::serialize_prior_file(file));
  CHECK(back.estimator.kind == "saturating_affine");
  CHECK(back.estimator.has_c0);
  CHECK(back.estimator.c0 == 5);
  const auto rebuilt = medprior::estimator_from_file(back.estimator);
  CHECK(rebuilt.describe() == sat.describe());
}

TEST_CASE("stored constructions verify clean", "[prior_file]") {
  for (unsigned long M : {1ul, 2ul, 4ul, 8ul}) {
    const PriorFile file = rational_file(M);
    const auto report = medprior::verify_prior_file(file, M + 2);
    INFO("M=" << M << "\n" << report.text);
    CHECK(report.pass);
    CHECK(report.first_failure_y == -1);
    CHECK(report.text.find("tail bounds: hold") != std::string::npos);
    CHECK(report.text.find("PASS") != std::string::npos);
  }

  const PriorFile ffile = bigfloat_file(4);
  const auto freport = medprior::verify_prior_file(ffile, 4);
  INFO(freport.text);
  CHECK(freport.pass);
  CHECK(freport.text.find("backend: bigfloat") != std::string::npos);
  CHECK(freport.text.find("[info:") != std::string::npos);
}

TEST_CASE("verification catches tampered weights", "[prior_file]") {
  PriorFile file = rational_file(2);
  file.weights_pw_exact[1] = "1/10";  // was 1/5
  file.weights_pw[1] = "0.1";
  const auto report = medprior::verify_prior_file(file, 2);
  CHECK_FALSE(report.pass);
  CHECK(report.text.find("weights do not normalize") != std::string::npos);
  CHECK(report.first_failure_y == -1);  // global failure, no per-y row
}

TEST_CASE("verification catches a tampered support", "[prior_file]") {
  PriorFile file = rational_file(2);
  file.support_exact[2] = "1";  // was 9/10
  const auto report = medprior::verify_prior_file(file, 2);
  CHECK_FALSE(report.pass);
  CHECK(report.text.find("support does not match") != std::string::npos);
}

TEST_CASE("verification catches weights that break the medians", "[prior_file]") {
  PriorFile file = rational_file(2);
  // Swap mass between the first two atoms: still a probability vector, but
  // the y=0 posterior median moves off f(0).
  file.weights_pw_exact[0] = "1/5";
  file.weights_pw_exact[1] = "1/2";
  file.weights_pw[0] = "0.2";
  file.weights_pw[1] = "0.5";
  const auto report = medprior::verify_prior_file(file, 2);
  CHECK_FALSE(report.pass);
  CHECK(report.first_failure_y == 0);
  CHECK(report.text.find("[FAIL]") != std::string::npos);
}

TEST_CASE("verification catches inconsistent tilted weights", "[prior_file]") {
  PriorFile file = rational_file(2);
  std::swap(file.weights_px[0], file.weights_px[2]);
  const auto report = medprior::verify_prior_file(file, 2);
  CHECK_FALSE(report.pass);
  CHECK(report.text.find("tilted weights inconsistent") != std::string::npos);
}

TEST_CASE("parser rejects malformed input", "[prior_file]") {
  CHECK_THROWS_AS(medprior::parse_prior_file("not json"), DomainError);
  CHECK_THROWS_AS(medprior::parse_prior_file("{}"), DomainError);

  const std::string good = medprior::serialize_prior_file(rational_file(1));

  const auto mutate = [&good](const std::string& from, const std::string& to) {
    std::string text = good;
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  CHECK_THROWS_AS(
      medprior::parse_prior_file(mutate("\"format_version\": 1", "\"format_version\": 2")),
      DomainError);
  CHECK_THROWS_AS(
      medprior::parse_prior_file(mutate("\"kind\": \"affine\"", "\"kind\": \"cubic\"")),
      DomainError);
  CHECK_THROWS_AS(
      medprior::parse_prior_file(mutate("\"kind\": \"rational\"", "\"kind\": \"decimal\"")),
      DomainError);
  CHECK_THROWS_AS(
      medprior::parse_prior_file(mutate("\"bits\": 256", "\"bits\": 32")),
      DomainError);
  CHECK_THROWS_AS(medprior::parse_prior_file(mutate("\"M\": 1", "\"M\": 3")),
                  DomainError);  // array lengths no longer fit
}

TEST_CASE("estimator reconstruction validates its block", "[prior_file]") {
  medprior::PriorFileEstimator e;
  e.kind = "affine";
  e.a = Rational(3, 10);
  e.b = Rational(3, 10);
  e.has_c0 = true;
  e.c0 = 4;
  CHECK_THROWS_AS(medprior::estimator_from_file(e), DomainError);

  e.kind = "saturating_affine";
  e.has_c0 = false;
  CHECK_THROWS_AS(medprior::estimator_from_file(e), DomainError);

  e.kind = "mystery";
  CHECK_THROWS_AS(medprior::estimator_from_file(e), DomainError);
}

TEST_CASE("table estimators have no file form", "[prior_file]") {
  const auto table = PrescribedEstimator::table(
      {Rational(1, 2), Rational(1), Rational(2)});
  const auto sol = medprior::solve_direct<Rational>(table, 2);
  const auto tilted = medprior::tilt_to_prior(sol);
  CHECK_THROWS_AS(medprior::make_prior_file(table, sol, tilted, 256),
                  DomainError);
}
