#include "dsp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsp {

namespace {

// Below this, ln C(n, k) is a direct sum of logs; above it the lgamma
// cancellation error is small relative to the result.
constexpr Count kDirectLogBinomialTerms = 1000;

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void HypergeomParams::validate() const {
  if (lot_size < 0 || nonconforming < 0 || sample_size < 0 || nonconforming > lot_size ||
      sample_size > lot_size) {
    throw std::domain_error("hypergeometric parameters require 0 <= K <= N and 0 <= n <= N (N=" +
                            std::to_string(lot_size) + ", K=" + std::to_string(nonconforming) +
                            ", n=" + std::to_string(sample_size) + ")");
  }
}

Count HypergeomParams::support_min() const noexcept {
  return std::max<Count>(0, sample_size - (lot_size - nonconforming));
}

Count HypergeomParams::support_max() const noexcept { return std::min(sample_size, nonconforming); }

void BetaBinomParams::validate() const {
  if (trials < 0 || !(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::domain_error("beta-binomial parameters require m >= 0, a > 0, b > 0");
  }
}

double log_binomial(Count n, Count k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial requires 0 <= k <= n (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
  const Count j = std::min(k, n - k);
  if (j == 0) return 0.0;
  if (j <= kDirectLogBinomialTerms) {
    // prod_{i=1..j} (n - j + i) / i
    CompensatedSum s;
    const double base = static_cast<double>(n - j);
    for (Count i = 1; i <= j; ++i) {
      s.add(std::log1p(base / static_cast<double>(i)));
    }
    return s.value();
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double hypergeometric_log_pmf(const HypergeomParams& params, Count y) {
  params.validate();
  if (y < params.support_min() || y > params.support_max()) {
    return -std::numeric_limits<double>::infinity();
  }
  return log_binomial(params.nonconforming, y) +
         log_binomial(params.lot_size - params.nonconforming, params.sample_size - y) -
         log_binomial(params.lot_size, params.sample_size);
}

double hypergeometric_pmf(const HypergeomParams& params, Count y) {
  return std::exp(hypergeometric_log_pmf(params, y));
}

double hypergeometric_cdf(const HypergeomParams& params, Count y) {
  params.validate();
  if (y < params.support_min()) return 0.0;
  if (y >= params.support_max()) return 1.0;
  CompensatedSum s;
  for (Count i = params.support_min(); i <= y; ++i) {
    s.add(hypergeometric_pmf(params, i));
  }
  return clamp_probability(s.value());
}

double beta_binomial_log_pmf(const BetaBinomParams& params, Count k) {
  params.validate();
  if (k < 0 || k > params.trials) {
    throw std::domain_error("beta-binomial outcome " + std::to_string(k) + " outside {0.." +
                            std::to_string(params.trials) + "}");
  }
  const double m = static_cast<double>(params.trials);
  const double kd = static_cast<double>(k);
  return log_binomial(params.trials, k) + log_beta(kd + params.alpha, m - kd + params.beta) -
         log_beta(params.alpha, params.beta);
}

double beta_binomial_pmf(const BetaBinomParams& params, Count k) {
  return std::exp(beta_binomial_log_pmf(params, k));
}

namespace {

double beta_binomial_range_sum(const BetaBinomParams& params, Count first, Count last) {
  // pmf(k+1) / pmf(k) = (m - k)(k + a) / ((k + 1)(m - k - 1 + b)), re-anchored now and then
  const double m = static_cast<double>(params.trials);
  const bool log_concave = params.alpha >= 1.0 && params.beta >= 1.0;
  CompensatedSum s;
  double term = 0.0, prev = 0.0;
  for (Count i = first; i <= last; ++i) {
    prev = term;
    if ((i - first) % 64 == 0) {
      term = beta_binomial_pmf(params, i);
    } else {
      const double k = static_cast<double>(i - 1);
      term *= (m - k) * (k + params.alpha) / ((k + 1.0) * (m - k - 1.0 + params.beta));
    }
    const double before = s.value();
    s.add(term);
    // past the mode of a log-concave pmf the rest of the tail is negligible
    if (log_concave && i > first && term < 1e-18 * before && term <= prev) break;
  }
  return s.value();
}

// Upper tails beyond the mean are small, so they are summed directly.
bool upper_tail_is_small(const BetaBinomParams& params, Count k) {
  return static_cast<double>(k) > static_cast<double>(params.trials) * params.alpha / (params.alpha + params.beta);
}

}  // namespace

double beta_binomial_cdf(const BetaBinomParams& params, Count k) {
  params.validate();
  if (k < 0) return 0.0;
  if (k >= params.trials) return 1.0;
  if (upper_tail_is_small(params, k + 1)) {
    return clamp_probability(1.0 - beta_binomial_range_sum(params, k + 1, params.trials));
  }
  return clamp_probability(beta_binomial_range_sum(params, 0, k));
}

double beta_binomial_sf(const BetaBinomParams& params, Count k) {
  params.validate();
  if (k <= 0) return 1.0;
  if (k > params.trials) return 0.0;
  if (upper_tail_is_small(params, k)) return clamp_probability(beta_binomial_range_sum(params, k, params.trials));
  return clamp_probability(1.0 - beta_binomial_range_sum(params, 0, k - 1));
}

std::vector<double> beta_binomial_pmf_vector(const BetaBinomParams& params) {
  params.validate();
  std::vector<double> out(static_cast<std::size_t>(params.trials + 1));
  for (Count k = 0; k <= params.trials; ++k) out[static_cast<std::size_t>(k)] = beta_binomial_pmf(params, k);
  return out;
}

}  // namespace dsp
