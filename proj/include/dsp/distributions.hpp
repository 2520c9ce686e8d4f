#pragma once

// Discrete distributions used by the risk functionals. Masses are formed in
// log space through lgamma and exponentiated before any summation.

#include <vector>

#include "dsp/fraction.hpp"

namespace dsp {

/// Hypergeometric(y; N, K, n): y nonconforming items in a sample of n drawn
/// without replacement from N items of which K are nonconforming.
struct HypergeomParams {
  Count lot_size = 0;
  Count nonconforming = 0;
  Count sample_size = 0;

  void validate() const;
  Count support_min() const noexcept;
  Count support_max() const noexcept;
};

/// Beta-binomial(k; m, a, b).
struct BetaBinomParams {
  Count trials = 0;
  double alpha = 1.0;
  double beta = 1.0;

  void validate() const;
};

/// ln C(n, k). Throws std::domain_error unless 0 <= k <= n.
double log_binomial(Count n, Count k);

/// ln B(a, b)
double log_beta(double a, double b);

double hypergeometric_log_pmf(const HypergeomParams& params, Count y);
double hypergeometric_pmf(const HypergeomParams& params, Count y);
double hypergeometric_cdf(const HypergeomParams& params, Count y);

double beta_binomial_log_pmf(const BetaBinomParams& params, Count k);
double beta_binomial_pmf(const BetaBinomParams& params, Count k);
double beta_binomial_cdf(const BetaBinomParams& params, Count k);

/// P(X >= k). Sums whichever tail has fewer terms.
double beta_binomial_sf(const BetaBinomParams& params, Count k);

/// Full pmf vector over {0..trials}.
std::vector<double> beta_binomial_pmf_vector(const BetaBinomParams& params);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace dsp
