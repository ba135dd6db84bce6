#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/precision.hpp"
#include "medprior/scalar.hpp"

namespace medprior {

enum class SolveMethod { DirectSolve, Recursive };

// A finitely supported probability distribution on the positive reals.
template <Scalar T>
struct DiscretePrior {
  std::vector<T> support;  // strictly increasing, positive
  std::vector<T> weights;  // non-negative, summing to 1 (within tolerance)
  std::string label;
};

// One mixing step of the recursive construction: while extending the prefix
// to length `prefix` against the tail atom with (1-based) index `tail_index`,
// the contiguous child solution was blended in with weight alpha.
template <Scalar T>
struct RecursionStep {
  unsigned long prefix = 0;
  unsigned long tail_index = 0;
  T alpha;
};

// Probability vector p on the support w_1 .. w_{M+1} balancing the first M
// moment conditions: for every y in [0:M-1],
//   sum_{i <= y+1} p_i w_i^y  =  sum_{i >= y+2} p_i w_i^y.
template <Scalar T>
struct MomentSolution {
  unsigned long M = 0;
  std::vector<T> support;
  std::vector<T> weights;
  std::vector<T> residuals;  // left minus right side above, indexed by y
  SolveMethod method = SolveMethod::DirectSolve;
  std::vector<RecursionStep<T>> mixing_steps;  // Recursive method only
};

struct SolverConfig {
  PrecisionConfig precision{};
  // BigFloat backend only: when a weight comes out negative beyond tolerance
  // the solve is retried at doubled precision up to this cap, after which
  // NumericError is thrown. The exact backend cannot need this.
  unsigned max_escalation_bits = 4096;
};

// ---------------------------------------------------------------------------
// Operations

// The (M+1)x(M+1) system matrix: row 0 is all ones (normalization); row k
// (1 <= k <= M) holds -w_i^(k-1) for i <= k and +w_i^(k-1) for i >= k+1.
template <Scalar T>
std::vector<std::vector<T>> build_system_matrix(const std::vector<T>& support,
                                                unsigned long M);

// Solves the moment system A p = e_1 by Gaussian elimination with partial
// pivoting (exact under Rational). Asserts non-negative weights; under
// BigFloat a violation beyond tolerance escalates precision per cfg.
template <Scalar T>
MomentSolution<T> solve_direct(const PrescribedEstimator& f, unsigned long M,
                               const SolverConfig& cfg = {});

// Independent construction by induction on the prefix length: memoized
// subproblems over (prefix length k, tail index j) whose two children are
// blended with the closed-form mixing weight alpha = (R-Q)/(L+R-Q), where,
// at moment order m = k-1,
//   L = sum_i A_i w_i^m   over the contiguous child A on w_1..w_k,
//   Q = sum_{i<k} B_i w_i^m and R = B_k w_j^m over the child B with tail w_j.
// Every alpha must land in [0,1]; a violation beyond tolerance is an
// InternalError (precision failure), since a valid mixing weight must exist.
template <Scalar T>
MomentSolution<T> solve_recursive(const PrescribedEstimator& f, unsigned long M,
                                  const SolverConfig& cfg = {});

// The solution viewed as a distribution (label defaults to "P_W").
template <Scalar T>
DiscretePrior<T> as_prior(const MomentSolution<T>& sol,
                          std::string label = "P_W");

// Exponential tilt dP_X ∝ e^w dP_W, normalized. Always lands in BigFloat
// (e^w is irrational); bits==0 uses the process default precision.
template <Scalar T>
DiscretePrior<BigFloat> tilt_to_prior(const DiscretePrior<T>& pw,
                                      unsigned bits = 0);
template <Scalar T>
DiscretePrior<BigFloat> tilt_to_prior(const MomentSolution<T>& sol,
                                      unsigned bits = 0);

// floor(i / kappa); kappa >= 1, i >= 1.
unsigned long tail_exponent(unsigned long i, const BigFloat& kappa);

// Chernoff-style tail bound (f(⌊i/κ⌋) / f(i))^⌊i/κ⌋ on P[W >= w_{i+1}],
// exact as a rational. In (0,1] when f is strictly increasing and i >= kappa;
// the caller is responsible for querying indices where f still increases.
Rational tail_bound(const PrescribedEstimator& f, unsigned long i,
                    const BigFloat& kappa);

// Distances between solutions at different truncation levels: no convergence
// claim, just the trend data.
struct ConvergencePair {
  unsigned long M_small = 0;
  unsigned long M_large = 0;
  std::size_t prefix_len = 0;  // compared leading atoms: min(M)+1
  BigFloat l1_prefix;          // l1 distance over that prefix
  BigFloat l1_first3;          // l1 distance over min(3, prefix_len) atoms
  BigFloat tv_tilted;          // total variation between the tilted priors
};

struct ConvergenceReport {
  std::vector<unsigned long> M_list;
  std::vector<ConvergencePair> pairs;  // all pairs, in listing order
  std::string table;                   // rendered text table
};

template <Scalar T>
ConvergenceReport convergence_diagnostics(const PrescribedEstimator& f,
                                          const std::vector<unsigned long>& M_list,
                                          const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Template implementations

namespace detail {

inline BigFloat to_bigfloat(const Rational& v, unsigned bits) {
  return BigFloat(v, bits);
}
inline BigFloat to_bigfloat(const BigFloat& v, unsigned bits) {
  return bits == 0 ? v : v.with_precision(bits);
}

template <Scalar T>
std::vector<T> support_in(const PrescribedEstimator& f, unsigned long M,
                          unsigned bits) {
  std::vector<T> out;
  out.reserve(M + 1);
  for (const Rational& q : support_points(f, M)) {
    out.push_back(from_rational<T>(q, bits));
  }
  return out;
}

// Gaussian elimination with partial pivoting on A x = rhs; A is consumed.
template <Scalar T>
std::vector<T> solve_linear(std::vector<std::vector<T>> A, std::vector<T> rhs) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (abs_val(A[row][col]) > abs_val(A[pivot][col])) {
        pivot = row;
      }
    }
    if (sign_of(A[pivot][col]) == 0) {
      throw InternalError("moment system matrix is singular");
    }
    std::swap(A[pivot], A[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (sign_of(A[row][col]) == 0) {
        continue;
      }
      const T factor = A[row][col] / A[col][col];
      A[row][col] = from_ulong<T>(0);
      for (std::size_t c = col + 1; c < n; ++c) {
        A[row][c] = A[row][c] - factor * A[col][c];
      }
      rhs[row] = rhs[row] - factor * rhs[col];
    }
  }

  std::vector<T> x(n, from_ulong<T>(0));
  for (std::size_t row = n; row-- > 0;) {
    T acc = rhs[row];
    for (std::size_t c = row + 1; c < n; ++c) {
      acc = acc - A[row][c] * x[c];
    }
    x[row] = acc / A[row][row];
  }
  return x;
}

// Left minus right side of the moment condition at each y in [0:M-1], with
// the index partition i <= y+1 vs i >= y+2 (1-based).
template <Scalar T>
std::vector<T> index_partition_residuals(const std::vector<T>& support,
                                         const std::vector<T>& weights,
                                         unsigned long M) {
  std::vector<T> residuals;
  residuals.reserve(M);
  for (unsigned long y = 0; y < M; ++y) {
    T acc = from_ulong<T>(0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      const T moment = weights[i] * pow_ui(support[i], y);
      if (i <= y) {
        acc = acc + moment;
      } else {
        acc = acc - moment;
      }
    }
    residuals.push_back(acc);
  }
  return residuals;
}

template <Scalar T>
const T& min_element_value(const std::vector<T>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  return values[best];
}

// Exact-backend postcondition: weights non-negative, summing to exactly 1.
template <Scalar T>
void check_weights_exact(const MomentSolution<T>& sol) {
  T sum = from_ulong<T>(0);
  for (const T& w : sol.weights) {
    if (sign_of(w) < 0) {
      throw InternalError(
          "exact solve produced a negative weight, which contradicts the "
          "existence of a non-negative solution on this support");
    }
    sum = sum + w;
  }
  if (!(sum == from_ulong<T>(1))) {
    throw InternalError("exact solve weights do not sum to 1");
  }
}

template <Scalar T>
MomentSolution<T> solve_direct_at(const PrescribedEstimator& f, unsigned long M,
                                  unsigned bits) {
  MomentSolution<T> sol;
  sol.M = M;
  sol.support = support_in<T>(f, M, bits);
  auto matrix = build_system_matrix(sol.support, M);
  std::vector<T> rhs(M + 1, from_ulong<T>(0));
  rhs[0] = from_ulong<T>(1);
  sol.weights = solve_linear(std::move(matrix), std::move(rhs));
  sol.residuals = index_partition_residuals(sol.support, sol.weights, M);
  sol.method = SolveMethod::DirectSolve;
  return sol;
}

template <Scalar T>
MomentSolution<T> solve_recursive_at(const PrescribedEstimator& f, unsigned long M,
                                     unsigned bits) {
  MomentSolution<T> sol;
  sol.M = M;
  sol.support = support_in<T>(f, M, bits);
  const std::vector<T>& w = sol.support;  // w[i-1] is the 1-indexed atom w_i

  const T zero = from_ulong<T>(0);
  const T one = from_ulong<T>(1);
  const T half = from_rational<T>(Rational(1, 2), bits);

  // memo[k][j] is the weight vector for prefix w_1..w_k with tail w_j,
  // j in [k+1 : M+1]; length k+1. Base case: both atoms carry 1/2.
  std::vector<std::vector<std::vector<T>>> memo(
      M + 1, std::vector<std::vector<T>>(M + 2));
  for (unsigned long j = 2; j <= M + 1; ++j) {
    memo[1][j] = {half, half};
  }

  for (unsigned long k = 2; k <= M; ++k) {
    for (unsigned long j = k + 1; j <= M + 1; ++j) {
      const std::vector<T>& child_a = memo[k - 1][k];  // contiguous: w_1..w_k
      const std::vector<T>& child_b = memo[k - 1][j];  // w_1..w_{k-1}, w_j
      const unsigned long m = k - 1;

      T big_l = zero;
      for (unsigned long i = 0; i < k; ++i) {
        big_l = big_l + child_a[i] * pow_ui(w[i], m);
      }
      T big_q = zero;
      for (unsigned long i = 0; i + 1 < k; ++i) {
        big_q = big_q + child_b[i] * pow_ui(w[i], m);
      }
      const T big_r = child_b[k - 1] * pow_ui(w[j - 1], m);

      const T denom = big_l + big_r - big_q;
      if (sign_of(denom) == 0) {
        throw InternalError("mixing equation is degenerate (zero denominator)");
      }
      T alpha = (big_r - big_q) / denom;

      if constexpr (kExactBackend<T>) {
        if (sign_of(alpha) < 0 || one < alpha) {
          throw InternalError("mixing weight left [0,1] under exact arithmetic");
        }
      } else {
        const BigFloat tol =
            PrecisionConfig(bits == 0 ? BigFloat::default_bits() : bits).tolerance;
        if (alpha < -tol || alpha > BigFloat(1) + tol) {
          throw InternalError(
              "mixing weight " + alpha.str_general(12) + " left [0,1] at step (k=" +
              std::to_string(k) + ", j=" + std::to_string(j) +
              "): precision failure");
        }
      }
      sol.mixing_steps.push_back(RecursionStep<T>{k, j, alpha});

      // Clamp the rounding dust so the blended weights stay non-negative.
      T alpha_mix = alpha;
      if (sign_of(alpha_mix) < 0) alpha_mix = zero;
      if (one < alpha_mix) alpha_mix = one;
      const T beta = one - alpha_mix;

      std::vector<T> blended(k + 1, zero);
      for (unsigned long i = 0; i < k; ++i) {
        blended[i] = alpha_mix * child_a[i];
      }
      for (unsigned long i = 0; i + 1 < k; ++i) {
        blended[i] = blended[i] + beta * child_b[i];
      }
      blended[k] = beta * child_b[k - 1];
      memo[k][j] = std::move(blended);
    }
  }

  sol.weights = std::move(memo[M][M + 1]);
  sol.residuals = index_partition_residuals(sol.support, sol.weights, M);
  sol.method = SolveMethod::Recursive;
  return sol;
}

template <Scalar T, class SolveAt>
MomentSolution<T> solve_with_escalation(const PrescribedEstimator& f,
                                        unsigned long M, const SolverConfig& cfg,
                                        SolveAt&& solve_at) {
  if constexpr (kExactBackend<T>) {
    MomentSolution<T> sol = solve_at(f, M, 0u);
    check_weights_exact(sol);
    return sol;
  } else {
    unsigned bits = cfg.precision.bits;
    while (true) {
      MomentSolution<T> sol = solve_at(f, M, bits);
      const BigFloat tol = PrecisionConfig(bits).tolerance;
      const BigFloat& worst = min_element_value(sol.weights);
      if (!(worst < -tol)) {
        return sol;
      }
      if (bits * 2 > cfg.max_escalation_bits) {
        throw NumericError(
            "negative weight " + worst.str_general(12) + " persists at " +
            std::to_string(bits) + " bits (escalation cap " +
            std::to_string(cfg.max_escalation_bits) + "); M=" + std::to_string(M));
      }
      bits *= 2;
    }
  }
}

}  // namespace detail

template <Scalar T>
std::vector<std::vector<T>> build_system_matrix(const std::vector<T>& support,
                                                unsigned long M) {
  if (support.size() != M + 1) {
    throw DomainError("support must hold exactly M+1 points");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (sign_of(support[i]) <= 0) {
      throw DomainError("support points must be positive");
    }
    if (i > 0 && !(support[i - 1] < support[i])) {
      throw DomainError("support points must be strictly increasing");
    }
  }

  std::vector<std::vector<T>> matrix;
  matrix.reserve(M + 1);
  matrix.emplace_back(M + 1, from_ulong<T>(1));  // normalization row
  for (unsigned long k = 1; k <= M; ++k) {
    std::vector<T> row;
    row.reserve(M + 1);
    for (unsigned long i = 1; i <= M + 1; ++i) {
      T entry = pow_ui(support[i - 1], k - 1);
      if (i <= k) {
        entry = -entry;
      }
      row.push_back(std::move(entry));
    }
    matrix.push_back(std::move(row));
  }
  return matrix;
}

template <Scalar T>
MomentSolution<T> solve_direct(const PrescribedEstimator& f, unsigned long M,
                               const SolverConfig& cfg) {
  return detail::solve_with_escalation<T>(
      f, M, cfg, [](const PrescribedEstimator& g, unsigned long m, unsigned bits) {
        return detail::solve_direct_at<T>(g, m, bits);
      });
}

template <Scalar T>
MomentSolution<T> solve_recursive(const PrescribedEstimator& f, unsigned long M,
                                  const SolverConfig& cfg) {
  return detail::solve_with_escalation<T>(
      f, M, cfg, [](const PrescribedEstimator& g, unsigned long m, unsigned bits) {
        return detail::solve_recursive_at<T>(g, m, bits);
      });
}

template <Scalar T>
DiscretePrior<T> as_prior(const MomentSolution<T>& sol, std::string label) {
  return DiscretePrior<T>{sol.support, sol.weights, std::move(label)};
}

template <Scalar T>
DiscretePrior<BigFloat> tilt_to_prior(const DiscretePrior<T>& pw, unsigned bits) {
  if (pw.support.empty() || pw.support.size() != pw.weights.size()) {
    throw DomainError("tilt requires a non-empty prior with matching arrays");
  }
  DiscretePrior<BigFloat> tilted;
  tilted.label = "P_X tilted";
  tilted.support.reserve(pw.support.size());
  tilted.weights.reserve(pw.support.size());

  BigFloat normalizer(0, bits == 0 ? 0u : bits);
  for (std::size_t i = 0; i < pw.support.size(); ++i) {
    const BigFloat atom = detail::to_bigfloat(pw.support[i], bits);
    const BigFloat mass = detail::to_bigfloat(pw.weights[i], bits) * exp(atom);
    tilted.support.push_back(atom);
    tilted.weights.push_back(mass);
    normalizer += mass;
  }
  if (!(normalizer > BigFloat(0))) {
    throw InternalError("tilt normalizer is not positive");
  }
  for (BigFloat& mass : tilted.weights) {
    mass /= normalizer;
  }
  return tilted;
}

template <Scalar T>
DiscretePrior<BigFloat> tilt_to_prior(const MomentSolution<T>& sol, unsigned bits) {
  return tilt_to_prior(as_prior(sol), bits);
}

template <Scalar T>
ConvergenceReport convergence_diagnostics(const PrescribedEstimator& f,
                                          const std::vector<unsigned long>& M_list,
                                          const SolverConfig& cfg) {
  if (M_list.empty()) {
    throw DomainError("M_list must be nonempty");
  }
  for (std::size_t i = 1; i < M_list.size(); ++i) {
    if (M_list[i - 1] >= M_list[i]) {
      throw DomainError("M_list must be strictly increasing");
    }
  }

  std::vector<MomentSolution<T>> solutions;
  std::vector<DiscretePrior<BigFloat>> tilted;
  solutions.reserve(M_list.size());
  tilted.reserve(M_list.size());
  for (unsigned long M : M_list) {
    solutions.push_back(solve_direct<T>(f, M, cfg));
    tilted.push_back(tilt_to_prior(solutions.back(), cfg.precision.bits));
  }

  ConvergenceReport report;
  report.M_list = M_list;
  std::string table =
      "pair            l1(prefix)      l1(first3)      tv(tilted)\n";
  for (std::size_t s = 0; s < M_list.size(); ++s) {
    for (std::size_t l = s + 1; l < M_list.size(); ++l) {
      ConvergencePair pair;
      pair.M_small = M_list[s];
      pair.M_large = M_list[l];
      pair.prefix_len = static_cast<std::size_t>(M_list[s]) + 1;

      BigFloat l1(0, cfg.precision.bits);
      BigFloat l1_first3(0, cfg.precision.bits);
      for (std::size_t i = 0; i < pair.prefix_len; ++i) {
        const T diff = solutions[s].weights[i] - solutions[l].weights[i];
        const BigFloat gap =
            abs_val(detail::to_bigfloat(diff, cfg.precision.bits));
        l1 += gap;
        if (i < 3) {
          l1_first3 += gap;
        }
      }
      pair.l1_prefix = l1;
      pair.l1_first3 = l1_first3;

      BigFloat tv(0, cfg.precision.bits);
      const auto& small_w = tilted[s].weights;
      const auto& large_w = tilted[l].weights;
      for (std::size_t i = 0; i < large_w.size(); ++i) {
        const BigFloat small_mass =
            i < small_w.size() ? small_w[i] : BigFloat(0);
        tv += abs_val(small_mass - large_w[i]);
      }
      pair.tv_tilted = tv / BigFloat(2);

      table += "M=" + std::to_string(pair.M_small) + " vs M=" +
               std::to_string(pair.M_large) + "   " +
               pair.l1_prefix.str_scientific(6) + "    " +
               pair.l1_first3.str_scientific(6) + "    " +
               pair.tv_tilted.str_scientific(6) + "\n";
      report.pairs.push_back(std::move(pair));
    }
  }
  report.table = std::move(table);
  return report;
}

}  // namespace medprior
