#include "medprior/prior_file.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "medprior/errors.hpp"
#include "medprior/posterior.hpp"
#include "medprior/precision.hpp"

namespace medprior {

namespace {

PriorFileEstimator estimator_block(const PrescribedEstimator& f) {
  PriorFileEstimator e;
  switch (f.kind()) {
    case EstimatorKind::Affine:
      e.kind = "affine";
      break;
    case EstimatorKind::SaturatingAffine:
      e.kind = "saturating_affine";
      break;
    case EstimatorKind::Table:
      throw DomainError("table estimators have no file representation");
  }
  e.a = f.a();
  e.b = f.b();
  if (f.saturates()) {
    e.has_c0 = true;
    e.c0 = f.c0();
  }
  return e;
}

void require_tilt_shape(std::size_t atoms, const DiscretePrior<BigFloat>& tilted) {
  if (tilted.support.size() != atoms || tilted.weights.size() != atoms) {
    throw DomainError("tilted prior does not match the solution's support");
  }
}

template <Scalar T>
std::string render(const T& v) {
  if constexpr (kExactBackend<T>) {
    return to_decimal_string(v);
  } else {
    return v.str_general(15);
  }
}

}  // namespace

PriorFile make_prior_file(const PrescribedEstimator& f,
                          const MomentSolution<Rational>& sol,
                          const DiscretePrior<BigFloat>& tilted, unsigned bits) {
  require_tilt_shape(sol.support.size(), tilted);
  const unsigned resolved = bits == 0 ? BigFloat::default_bits() : bits;
  const std::size_t digits = digits_for_bits(resolved);

  PriorFile file;
  file.estimator = estimator_block(f);
  file.M = sol.M;
  file.backend.kind = "rational";
  file.backend.bits = resolved;
  for (const Rational& v : sol.support) {
    file.support.push_back(to_decimal_string(v));
    file.support_exact.push_back(to_fraction_string(v));
  }
  for (const Rational& v : sol.weights) {
    file.weights_pw.push_back(to_decimal_string(v));
    file.weights_pw_exact.push_back(to_fraction_string(v));
  }
  for (const Rational& v : sol.residuals) {
    file.residuals.push_back(to_decimal_string(v));
    file.residuals_exact.push_back(to_fraction_string(v));
  }
  for (const BigFloat& v : tilted.weights) {
    file.weights_px.push_back(v.str_general(digits));
  }
  return file;
}

PriorFile make_prior_file(const PrescribedEstimator& f,
                          const MomentSolution<BigFloat>& sol,
                          const DiscretePrior<BigFloat>& tilted, unsigned bits) {
  require_tilt_shape(sol.support.size(), tilted);
  // Precision escalation may have left the solution above the requested
  // bits; record what the values actually carry so they round-trip.
  unsigned actual = bits == 0 ? BigFloat::default_bits() : bits;
  for (const BigFloat& v : sol.weights) {
    actual = std::max(actual, static_cast<unsigned>(v.precision_bits()));
  }
  const std::size_t digits = digits_for_bits(actual);

  PriorFile file;
  file.estimator = estimator_block(f);
  file.M = sol.M;
  file.backend.kind = "bigfloat";
  file.backend.bits = actual;
  for (const BigFloat& v : sol.support) {
    file.support.push_back(v.str_general(digits));
  }
  for (const BigFloat& v : sol.weights) {
    file.weights_pw.push_back(v.str_general(digits));
  }
  for (const BigFloat& v : sol.residuals) {
    file.residuals.push_back(v.str_general(digits));
  }
  for (const BigFloat& v : tilted.weights) {
    file.weights_px.push_back(v.str_general(digits));
  }
  return file;
}

std::string serialize_prior_file(const PriorFile& file) {
  nlohmann::ordered_json j;
  j["format_version"] = file.format_version;

  nlohmann::ordered_json est;
  est["kind"] = file.estimator.kind;
  est["a"] = to_fraction_string(file.estimator.a);
  est["b"] = to_fraction_string(file.estimator.b);
  if (file.estimator.has_c0) {
    est["c0"] = file.estimator.c0;
  } else {
    est["c0"] = nullptr;
  }
  j["estimator"] = est;

  j["M"] = file.M;
  j["backend"] = {{"kind", file.backend.kind}, {"bits", file.backend.bits}};
  j["support"] = file.support;
  j["weights_pw"] = file.weights_pw;
  j["weights_px"] = file.weights_px;
  j["residuals"] = file.residuals;
  if (file.backend.kind == "rational") {
    j["support_exact"] = file.support_exact;
    j["weights_pw_exact"] = file.weights_pw_exact;
    j["residuals_exact"] = file.residuals_exact;
  }
  return j.dump(2) + "\n";
}

PriorFile parse_prior_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(std::string("malformed prior file: ") + e.what());
  }

  PriorFile file;
  try {
    file.format_version = j.at("format_version").get<int>();
    if (file.format_version != 1) {
      throw DomainError("unsupported format_version " +
                        std::to_string(file.format_version));
    }

    const auto& est = j.at("estimator");
    file.estimator.kind = est.at("kind").get<std::string>();
    if (file.estimator.kind != "affine" &&
        file.estimator.kind != "saturating_affine") {
      throw DomainError("unknown estimator kind: " + file.estimator.kind);
    }
    file.estimator.a = rational_from_string(est.at("a").get<std::string>());
    file.estimator.b = rational_from_string(est.at("b").get<std::string>());
    if (est.contains("c0") && !est.at("c0").is_null()) {
      file.estimator.has_c0 = true;
      file.estimator.c0 = est.at("c0").get<unsigned long>();
    }

    file.M = j.at("M").get<unsigned long>();
    if (file.M < 1) {
      throw DomainError("M must be >= 1");
    }

    const auto& backend = j.at("backend");
    file.backend.kind = backend.at("kind").get<std::string>();
    if (file.backend.kind != "rational" && file.backend.kind != "bigfloat") {
      throw DomainError("unknown backend kind: " + file.backend.kind);
    }
    file.backend.bits = backend.at("bits").get<unsigned>();
    if (file.backend.bits < 64) {
      throw DomainError("recorded precision is below 64 bits");
    }

    const auto strings = [&j](const char* key) {
      return j.at(key).get<std::vector<std::string>>();
    };
    file.support = strings("support");
    file.weights_pw = strings("weights_pw");
    file.weights_px = strings("weights_px");
    file.residuals = strings("residuals");
    if (file.backend.kind == "rational") {
      file.support_exact = strings("support_exact");
      file.weights_pw_exact = strings("weights_pw_exact");
      file.residuals_exact = strings("residuals_exact");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed prior file: ") + e.what());
  }

  const std::size_t atoms = static_cast<std::size_t>(file.M) + 1;
  const bool lengths_ok =
      file.support.size() == atoms && file.weights_pw.size() == atoms &&
      file.weights_px.size() == atoms && file.residuals.size() == file.M &&
      (file.backend.kind != "rational" ||
       (file.support_exact.size() == atoms &&
        file.weights_pw_exact.size() == atoms &&
        file.residuals_exact.size() == file.M));
  if (!lengths_ok) {
    throw DomainError("array lengths are inconsistent with M");
  }
  return file;
}

PrescribedEstimator estimator_from_file(const PriorFileEstimator& e) {
  if (e.kind == "affine") {
    if (e.has_c0) {
      throw DomainError("affine estimators cannot carry c0");
    }
    return PrescribedEstimator::affine(e.a, e.b);
  }
  if (e.kind == "saturating_affine") {
    if (!e.has_c0) {
      throw DomainError("saturating_affine requires c0");
    }
    return PrescribedEstimator::saturating_affine(e.a, e.b, e.c0);
  }
  throw DomainError("unknown estimator kind: " + e.kind);
}

namespace {

template <Scalar T>
VerificationReport verify_impl(const PriorFile& file, unsigned long y_max) {
  const PrescribedEstimator f = estimator_from_file(file.estimator);
  const unsigned long M = file.M;
  const unsigned bits = file.backend.bits;
  const BigFloat tol = PrecisionConfig(bits).tolerance;

  std::ostringstream out;
  VerificationReport report;
  bool pass = true;
  const auto fail_y = [&](unsigned long y) {
    pass = false;
    if (report.first_failure_y < 0) {
      report.first_failure_y = static_cast<long long>(y);
    }
  };

  const auto parse_at = [&](const std::vector<std::string>& dec,
                            const std::vector<std::string>& exact,
                            std::size_t i) -> T {
    if constexpr (kExactBackend<T>) {
      (void)dec;
      return rational_from_string(exact[i]);
    } else {
      (void)exact;
      return BigFloat(dec[i], bits);
    }
  };
  const auto close_to = [&](const T& lhs, const T& rhs) -> bool {
    if constexpr (kExactBackend<T>) {
      return lhs == rhs;
    } else {
      return !(abs_val(lhs - rhs) > tol);
    }
  };
  const auto target_in = [&](unsigned long y) -> T {
    if constexpr (kExactBackend<T>) {
      return evaluate(f, y);
    } else {
      return BigFloat(evaluate(f, y), bits);
    }
  };

  out << "estimator: " << f.describe() << "\n";
  out << "backend: " << file.backend.kind << " (" << bits << " bits)\n";
  out << "M: " << M << "\n";

  const std::size_t atoms = static_cast<std::size_t>(M) + 1;
  std::vector<T> support;
  std::vector<T> weights;
  support.reserve(atoms);
  weights.reserve(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    support.push_back(parse_at(file.support, file.support_exact, i));
    weights.push_back(parse_at(file.weights_pw, file.weights_pw_exact, i));
  }

  // Support: must be the estimator's own values, strictly increasing.
  bool support_ok = true;
  for (std::size_t i = 0; i < atoms; ++i) {
    if (!close_to(support[i], target_in(i))) {
      support_ok = false;
    }
    if (sign_of(support[i]) <= 0 ||
        (i > 0 && !(support[i - 1] < support[i]))) {
      support_ok = false;
    }
  }
  if (support_ok) {
    out << "support: matches estimator values (" << atoms << " atoms)\n";
  } else {
    pass = false;
    out << "FAIL: support does not match estimator values\n";
  }

  // Weights: non-negative, normalized.
  bool weights_ok = true;
  T sum = from_ulong<T>(0);
  for (const T& w : weights) {
    if constexpr (kExactBackend<T>) {
      if (sign_of(w) < 0) weights_ok = false;
    } else {
      if (w < -tol) weights_ok = false;
    }
    sum = sum + w;
  }
  if (!close_to(sum, from_ulong<T>(1))) {
    pass = false;
    out << "FAIL: weights do not normalize (sum = " << render(sum) << ")\n";
    weights_ok = false;
  } else if (!weights_ok) {
    pass = false;
    out << "FAIL: negative weight in P_W\n";
  } else {
    out << "weights: non-negative, sum 1\n";
  }

  if (!support_ok || !weights_ok) {
    out << "skipping posterior, tilt, and tail checks (arrays unusable)\n";
    out << "FAIL\n";
    report.pass = false;
    report.text = out.str();
    return report;
  }

  MomentSolution<T> sol{M,     support,
                        weights, {},
                        SolveMethod::DirectSolve, {}};
  const std::vector<T> residuals = moment_condition_check(sol, f);

  // Per-y report: median against f(y) and the recomputed moment imbalance.
  // Rows beyond the guaranteed range [0:M-1] are informational.
  const unsigned long y_top = std::max(y_max, M - 1);
  for (unsigned long y = 0; y <= y_top; ++y) {
    const PosteriorSummary<T> summary = posterior_of_tilt(sol, y);
    const T target = target_in(y);
    const bool within = y < M;
    const bool median_ok = close_to(summary.median, target);
    bool residual_ok = true;
    if (within) {
      if constexpr (kExactBackend<T>) {
        residual_ok = sign_of(residuals[y]) == 0;
      } else {
        residual_ok = !(abs_val(residuals[y]) > tol);
      }
    }

    out << "y=" << y << ": median " << render(summary.median) << " target "
        << render(target);
    if (within) {
      out << " residual " << render(residuals[y]);
      if (median_ok && residual_ok) {
        out << " [ok]\n";
      } else {
        out << " [FAIL]\n";
        fail_y(y);
      }
    } else {
      out << (median_ok ? " [info: matches]\n" : " [info: beyond guarantee]\n");
    }
  }

  // Tilted weights must be the tilt of the stored P_W.
  {
    const DiscretePrior<T> pw{support, weights, "P_W"};
    const DiscretePrior<BigFloat> recomputed = tilt_to_prior(pw, bits);
    BigFloat worst(0, bits);
    for (std::size_t i = 0; i < atoms; ++i) {
      const BigFloat recorded(file.weights_px[i], bits);
      const BigFloat gap = abs_val(recorded - recomputed.weights[i]);
      if (gap > worst) {
        worst = gap;
      }
    }
    if (worst > tol) {
      pass = false;
      out << "FAIL: tilted weights inconsistent with P_W (max gap "
          << worst.str_general(6) << ")\n";
    } else {
      out << "tilt: consistent (max gap " << worst.str_general(6) << ")\n";
    }
  }

  // Tail bounds: reported, but not part of the guaranteed-range gate.
  {
    const std::pair<const char*, BigFloat> kappas[] = {
        {"1", BigFloat(1)}, {"2", BigFloat(2)}, {"e", exp(BigFloat(1))}};
    bool all_hold = true;
    for (unsigned long i = 1; i <= M; ++i) {
      for (const auto& [name, kappa] : kappas) {
        if (tail_exponent(i, kappa) < 1) {
          continue;  // vacuous
        }
        const Rational bound = tail_bound(f, i, kappa);
        T suffix = from_ulong<T>(0);
        for (std::size_t idx = i; idx < atoms; ++idx) {
          suffix = suffix + weights[idx];
        }
        bool holds;
        if constexpr (kExactBackend<T>) {
          holds = !(bound < suffix);
        } else {
          holds = !(suffix > BigFloat(bound, bits) + tol);
        }
        if (!holds) {
          all_hold = false;
          out << "note: tail bound violated at i=" << i << ", kappa=" << name
              << " (mass " << render(suffix) << " > bound "
              << to_decimal_string(bound, 6) << ")\n";
        }
      }
    }
    if (all_hold) {
      out << "tail bounds: hold for kappa in {1, 2, e}\n";
    }
  }

  out << (pass ? "PASS" : "FAIL") << "\n";
  report.pass = pass;
  report.text = out.str();
  return report;
}

}  // namespace

VerificationReport verify_prior_file(const PriorFile& file, unsigned long y_max) {
  if (file.backend.kind == "rational") {
    return verify_impl<Rational>(file, y_max);
  }
  if (file.backend.kind == "bigfloat") {
    return verify_impl<BigFloat>(file, y_max);
  }
  throw DomainError("unknown backend kind: " + file.backend.kind);
}

}  // namespace medprior
