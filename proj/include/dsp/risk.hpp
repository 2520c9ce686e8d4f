#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsp/distributions.hpp"
#include "dsp/fraction.hpp"

namespace dsp {

/// Beta-binomial prior on the number of nonconforming items in the whole lot.
/// (1, 1) is the uniform reference prior.
struct PriorSpec {
  double a = 1.0;
  double b = 1.0;

  static PriorSpec uniform() noexcept { return {1.0, 1.0}; }
  void validate() const;
  bool is_uniform() const noexcept { return a == 1.0 && b == 1.0; }
};

struct RiskQuery {
  Count lot_size = 0;
  Count sample_size = 0;
  Count observed = 0;
  ExactFraction lq{1, 50};
  PriorSpec prior{};

  void validate() const;
  Count remaining() const noexcept { return lot_size - sample_size; }
};

struct RiskResult {
  double risk = 0.0;
  Count threshold_c = 0;
  Count posterior_trials = 0;
  double posterior_a = 1.0;
  double posterior_b = 1.0;
  /// Observation the result was computed for (the maximizer for max-risk queries).
  Count observed = 0;
  /// |risk - limit| within kTieTolerance; only set by flag_boundary_tie.
  bool boundary_tie = false;
  /// Exact rational risk equals the limit (limit read as its nearest simple
  /// fraction). Empty when the remaining lot is too large to check.
  std::optional<bool> exact_tie;
};

/// Raised for quantities that have no combinatorial description.
class NotComputable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Comparison slack against a risk limit.
inline constexpr double kLimitSlack = 1e-9;
inline constexpr double kTieTolerance = 1e-9;
/// Largest remaining lot for which exact rational risks are evaluated.
inline constexpr Count kExactMaxTrials = 200;
/// Largest lot the brute-force posterior accepts.
inline constexpr Count kBruteForceMaxLot = 5000;

/// risk <= limit + kLimitSlack
bool within_limit(double risk, double limit) noexcept;

/// P(Y <= ac | K = ceil(lq * N)), the classic consumer's risk on the whole lot.
double frequentist_consumer_risk(Count lot_size, Count sample_size, Count ac, const ExactFraction& lq);

/// The analogous consumer's risk on the remaining lot conditions on
/// k_rem = K - Y, an event that involves Y itself, so it is not a
/// hypergeometric tail. Always throws NotComputable.
[[noreturn]] void frequentist_remaining_risk(Count lot_size, Count sample_size, Count ac,
                                             const ExactFraction& lq);

/// Message carried by frequentist_remaining_risk.
std::string remaining_risk_explanation();

/// Closed-form posterior of k_rem: Beta-binomial(N - n, a + y, b + n - y).
BetaBinomParams posterior_remaining(const RiskQuery& query);

/// Posterior of k_rem from Bayes' rule evaluated term by term over k_whole.
/// Index i holds P(k_rem = i | y). Throws std::length_error for N > kBruteForceMaxLot.
std::vector<double> brute_force_posterior(const RiskQuery& query);

/// P(k_rem >= ceil(lq (N - n)) | y). An empty remaining lot has risk 0.
RiskResult specific_consumer_risk(const RiskQuery& query);

/// Largest specific consumer's risk over the acceptable observations y <= ac.
RiskResult max_risk_over_acceptable_outcomes(Count lot_size, Count sample_size, Count ac,
                                             const ExactFraction& lq, const PriorSpec& prior);

/// Sets boundary_tie, and exact_tie when the remaining lot is small enough
/// for exact evaluation. The query must be the one that produced `result`.
void flag_boundary_tie(RiskResult& result, const RiskQuery& query, double limit);

}  // namespace dsp
