#include "medprior/moment_solver.hpp"

namespace medprior {

unsigned long tail_exponent(unsigned long i, const BigFloat& kappa) {
  if (i < 1) {
    throw DomainError("tail index must be >= 1");
  }
  if (kappa < BigFloat(1)) {
    throw DomainError("kappa must be >= 1");
  }
  return (BigFloat(i) / kappa).floor_ulong();
}

Rational tail_bound(const PrescribedEstimator& f, unsigned long i,
                    const BigFloat& kappa) {
  const unsigned long k = tail_exponent(i, kappa);
  // k == 0 gives the vacuous bound 1; otherwise the base f(k)/f(i) < 1
  // whenever f still increases between the two indices.
  return pow_ui(evaluate(f, k) / evaluate(f, i), k);
}

}  // namespace medprior
