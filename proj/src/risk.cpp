#include "dsp/risk.hpp"

#include <cmath>
#include <stdexcept>

#include "dsp/exact.hpp"

namespace dsp {

void PriorSpec::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("prior parameters must be positive and finite");
  }
}

void RiskQuery::validate() const {
  if (lot_size < 0 || sample_size < 0 || sample_size > lot_size) {
    throw std::domain_error("risk query requires 0 <= n <= N (N=" + std::to_string(lot_size) +
                            ", n=" + std::to_string(sample_size) + ")");
  }
  if (observed < 0 || observed > sample_size) {
    throw std::domain_error("risk query requires 0 <= y <= n (y=" + std::to_string(observed) + ")");
  }
  prior.validate();
}

bool within_limit(double risk, double limit) noexcept { return risk <= limit + kLimitSlack; }

double frequentist_consumer_risk(Count lot_size, Count sample_size, Count ac, const ExactFraction& lq) {
  if (ac < 0) throw std::domain_error("acceptance number must be non-negative");
  const HypergeomParams params{lot_size, ceil_threshold(lq, std::max<Count>(lot_size, 0)), sample_size};
  params.validate();
  return hypergeometric_cdf(params, ac);
}

std::string remaining_risk_explanation() {
  return "the consumer's risk for the remaining lot, P(Y <= Ac | k_rem = ceil(LQ (N - n)), N, n), "
         "is not computable: k_rem = k_whole - Y, so the conditioning event involves the random "
         "variable Y itself and the probability is not a hypergeometric cumulative distribution. "
         "Use the specific consumer's risk P(k_rem >= ceil(LQ (N - n)) | y, N, n) instead.";
}

void frequentist_remaining_risk(Count, Count, Count, const ExactFraction&) {
  throw NotComputable(remaining_risk_explanation());
}

BetaBinomParams posterior_remaining(const RiskQuery& query) {
  query.validate();
  return {query.remaining(), query.prior.a + static_cast<double>(query.observed),
          query.prior.b + static_cast<double>(query.sample_size - query.observed)};
}

std::vector<double> brute_force_posterior(const RiskQuery& query) {
  query.validate();
  if (query.lot_size > kBruteForceMaxLot) {
    throw std::length_error("brute-force posterior limited to lots of at most " +
                            std::to_string(kBruteForceMaxLot) + " items");
  }
  const Count remaining = query.remaining();
  const BetaBinomParams prior{query.lot_size, query.prior.a, query.prior.b};
  std::vector<double> weights(static_cast<std::size_t>(remaining + 1), 0.0);
  CompensatedSum total;
  for (Count k_whole = query.observed; k_whole <= remaining + query.observed; ++k_whole) {
    const HypergeomParams sampling{query.lot_size, k_whole, query.sample_size};
    const double w = std::exp(hypergeometric_log_pmf(sampling, query.observed) +
                              beta_binomial_log_pmf(prior, k_whole));
    weights[static_cast<std::size_t>(k_whole - query.observed)] = w;
    total.add(w);
  }
  const double norm = total.value();
  if (!(norm > 0.0)) throw std::domain_error("observation has zero likelihood under the prior");
  for (double& w : weights) w /= norm;
  return weights;
}

RiskResult specific_consumer_risk(const RiskQuery& query) {
  const BetaBinomParams post = posterior_remaining(query);
  RiskResult out;
  out.posterior_trials = post.trials;
  out.posterior_a = post.alpha;
  out.posterior_b = post.beta;
  out.observed = query.observed;
  out.threshold_c = ceil_threshold(query.lq, post.trials);
  // Nothing remains, so nothing unsatisfactory can be accepted.
  out.risk = post.trials == 0 ? 0.0 : beta_binomial_sf(post, out.threshold_c);
  return out;
}

RiskResult max_risk_over_acceptable_outcomes(Count lot_size, Count sample_size, Count ac,
                                             const ExactFraction& lq, const PriorSpec& prior) {
  if (ac < 0 || ac > sample_size) {
    throw std::domain_error("acceptance number must satisfy 0 <= Ac <= n");
  }
  RiskResult worst;
  for (Count y = 0; y <= ac; ++y) {
    RiskResult r = specific_consumer_risk({lot_size, sample_size, y, lq, prior});
    if (y == 0 || r.risk > worst.risk) worst = r;
  }
  return worst;
}

void flag_boundary_tie(RiskResult& result, const RiskQuery& query, double limit) {
  result.boundary_tie = std::abs(result.risk - limit) <= kTieTolerance;
  result.exact_tie.reset();
  if (!result.boundary_tie) {
    result.exact_tie = false;
  } else if (query.remaining() <= kExactMaxTrials) {
    result.exact_tie = exact::specific_consumer_risk(query) == exact::rationalize(limit);
  }
}

}  // namespace dsp
