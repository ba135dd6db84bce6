#include <benchmark/benchmark.h>

#include "medprior/bigfloat.hpp"
#include "medprior/estimator.hpp"
#include "medprior/gamma_baseline.hpp"
#include "medprior/incomplete_gamma.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/posterior.hpp"
#include "medprior/rational.hpp"

namespace {

using medprior::BigFloat;
using medprior::PrescribedEstimator;
using medprior::Rational;

const PrescribedEstimator& estimator() {
  static const PrescribedEstimator f =
      PrescribedEstimator::affine(Rational(3, 10), Rational(3, 10));
  return f;
}

void BM_SolveDirectRational(benchmark::State& state) {
  const unsigned long M = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(medprior::solve_direct<Rational>(estimator(), M));
  }
}
BENCHMARK(BM_SolveDirectRational)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveRecursiveRational(benchmark::State& state) {
  const unsigned long M = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        medprior::solve_recursive<Rational>(estimator(), M));
  }
}
BENCHMARK(BM_SolveRecursiveRational)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveDirectBigFloat(benchmark::State& state) {
  const unsigned long M = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(medprior::solve_direct<BigFloat>(estimator(), M));
  }
}
BENCHMARK(BM_SolveDirectBigFloat)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveRecursiveBigFloat(benchmark::State& state) {
  const unsigned long M = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        medprior::solve_recursive<BigFloat>(estimator(), M));
  }
}
BENCHMARK(BM_SolveRecursiveBigFloat)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_TiltAndPosterior(benchmark::State& state) {
  const unsigned long M = static_cast<unsigned long>(state.range(0));
  const auto sol = medprior::solve_direct<Rational>(estimator(), M);
  for (auto _ : state) {
    const auto tilted = medprior::tilt_to_prior(sol);
    benchmark::DoNotOptimize(medprior::posterior(tilted, M / 2));
  }
}
BENCHMARK(BM_TiltAndPosterior)->Arg(4)->Arg(8)->Arg(16);

void BM_GammaMedian(benchmark::State& state) {
  const auto g = medprior::GammaPrior::from_mean_coefficients(Rational(1, 2),
                                                              Rational(1, 2));
  const unsigned long y = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(medprior::conditional_median(g, y));
  }
}
BENCHMARK(BM_GammaMedian)->Arg(0)->Arg(10)->Arg(100);

void BM_InverseIncompleteGamma(benchmark::State& state) {
  const unsigned bits = static_cast<unsigned>(state.range(0));
  const BigFloat s(Rational(21, 2), bits);
  const BigFloat half(Rational(1, 2), bits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        medprior::inverse_regularized_lower_incomplete_gamma(s, half));
  }
}
BENCHMARK(BM_InverseIncompleteGamma)->Arg(128)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
