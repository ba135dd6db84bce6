#pragma once

#include <string>
#include <vector>

#include "medprior/estimator.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/rational.hpp"

namespace medprior {

// On-disk description of the construction (format_version 1, JSON object
// syntax). Numbers travel as decimal strings sized to the recorded precision;
// the exact backend additionally stores fraction strings, which are the
// authoritative values on re-verification.
struct PriorFileEstimator {
  std::string kind;  // "affine" | "saturating_affine"
  Rational a;
  Rational b;
  bool has_c0 = false;   // false: increasing forever
  unsigned long c0 = 0;  // saturation point when has_c0
};

struct PriorFileBackend {
  std::string kind = "rational";  // "rational" | "bigfloat"
  // Working precision of every float in the file; under the rational backend
  // this is the precision the tilted weights were computed at.
  unsigned bits = 0;
};

struct PriorFile {
  int format_version = 1;
  PriorFileEstimator estimator;
  unsigned long M = 0;
  PriorFileBackend backend;
  std::vector<std::string> support;     // w_1 .. w_{M+1}
  std::vector<std::string> weights_pw;  // P_W
  std::vector<std::string> weights_px;  // tilted P_X
  std::vector<std::string> residuals;   // moment imbalance, length M
  // Fraction-string counterparts, present iff backend.kind == "rational".
  std::vector<std::string> support_exact;
  std::vector<std::string> weights_pw_exact;
  std::vector<std::string> residuals_exact;
};

PriorFile make_prior_file(const PrescribedEstimator& f,
                          const MomentSolution<Rational>& sol,
                          const DiscretePrior<BigFloat>& tilted, unsigned bits);
PriorFile make_prior_file(const PrescribedEstimator& f,
                          const MomentSolution<BigFloat>& sol,
                          const DiscretePrior<BigFloat>& tilted, unsigned bits);

// JSON object with stable key order and a trailing newline.
std::string serialize_prior_file(const PriorFile& file);

// Throws DomainError on malformed input (syntax, missing or mistyped fields,
// inconsistent array lengths, unknown kinds, unsupported format_version).
PriorFile parse_prior_file(const std::string& text);

// Rebuilds the estimator the file claims to target.
PrescribedEstimator estimator_from_file(const PriorFileEstimator& e);

struct VerificationReport {
  bool pass = false;
  long long first_failure_y = -1;  // first failing y, or -1 for global failures
  std::string text;                // printable report, one finding per line
};

// Re-derives everything checkable from the stored weights: support agrees
// with f, weights normalize, recomputed moment residuals vanish, posterior
// medians hit f(y) on the guaranteed range [0:M-1] (and informationally up
// to y_max), tilted weights match a recomputed tilt, and the tail bounds
// hold. `pass` reflects the guaranteed-range checks and file integrity;
// tail-bound and beyond-guarantee rows are reported but do not gate it.
VerificationReport verify_prior_file(const PriorFile& file, unsigned long y_max);

}  // namespace medprior
