#include "medprior/posterior.hpp"

namespace medprior {

PosteriorSummary<BigFloat> posterior(const DiscretePrior<BigFloat>& prior,
                                     unsigned long y, const BigFloat& tie_tol) {
  detail::require_prior_shape(prior);
  std::vector<BigFloat> unnorm;
  unnorm.reserve(prior.support.size());
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    const BigFloat& atom = prior.support[i];
    unnorm.push_back(prior.weights[i] * pow_ui(atom, y) * exp(-atom));
  }
  return detail::summarize(y, prior.support, std::move(unnorm), tie_tol);
}

PosteriorSummary<BigFloat> posterior(const DiscretePrior<BigFloat>& prior,
                                     unsigned long y) {
  if (prior.weights.empty()) {
    throw DomainError("prior must be non-empty");
  }
  return posterior(prior, y, detail::default_tie_tol(prior.weights));
}

BigFloat conditional_mean(const DiscretePrior<BigFloat>& prior,
                          unsigned long y) {
  return posterior(prior, y).mean;
}

}  // namespace medprior
