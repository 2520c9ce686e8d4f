#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsp/fraction.hpp"
#include "dsp/risk.hpp"

namespace dsp {

enum class PlanForm {
  sample_size,    // (n, Ac)
  remaining_lot,  // [N - n, Ac]
};

/// A single-sampling plan in either representation.
struct Plan {
  PlanForm form = PlanForm::sample_size;
  Count size = 0;  // n, or r = N - n
  Count ac = 0;

  static Plan sample(Count n, Count ac = 0);
  static Plan remaining(Count r, Count ac = 0);

  void validate() const;
  /// Sample size the plan prescribes at lot size N. A sample-size plan
  /// larger than the lot becomes a census (n = N).
  Count sample_size_at(Count lot_size) const;
  bool applicable_to(Count lot_size) const noexcept;

  /// "(n, Ac)" or "[r, Ac]"
  std::string str() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

/// Inclusive range of lot sizes.
struct LotRange {
  Count lo = 0;
  Count hi = 0;

  void validate() const;
  Count size() const noexcept { return hi - lo + 1; }
  std::string str() const;

  friend bool operator==(const LotRange&, const LotRange&) = default;
};

/// Risk-limit design parameters shared by the search routines.
struct DesignCriteria {
  ExactFraction lq{1, 50};
  Count ac = 0;
  double limit = 0.1;
  PriorSpec prior{};

  void validate() const;
};

enum class LotCategory {
  green,           // satisfactory before and after
  olive,           // after-acceptance quality depends on the sample
  orange,          // satisfactory before, unsatisfactory after
  red,             // unsatisfactory before and after
  never_accepted,  // no acceptable observation is possible
};

std::string to_string(LotCategory category);

/// Thrown when a plan cannot be applied to a lot-size range.
class RangeIncompatible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RangeReport {
  bool valid = false;
  Count binding_lot_size = 0;  // lot size with the largest risk
  RiskResult binding;
  /// Lot sizes at which the plan leaves no remaining lot.
  std::vector<Count> census_lot_sizes;
};

/// Largest lot size the search routines accept: 10^5, or DSP_MAX_LOT_SIZE.
Count max_lot_size();

/// Smallest n leaving at least one item whose risk over all acceptable
/// outcomes is within the limit. Scans every n; the risk is not monotone in n.
std::optional<Count> minimal_sample_size(Count lot_size, const DesignCriteria& criteria);

/// Checks the plan at every lot size of the range.
RangeReport validate_plan_for_range(const Plan& plan, const LotRange& range, const DesignCriteria& criteria);

/// Whether a sample-size plan may consume a whole lot in the range.
enum class CensusPolicy { forbid, allow };

/// Sample-size form: smallest valid n. Remaining-lot form: largest valid r.
std::optional<Plan> design_range_plan(const LotRange& range, const DesignCriteria& criteria, PlanForm form,
                                      CensusPolicy census = CensusPolicy::forbid);

/// Fate of a lot with k_whole nonconforming items under the plan.
LotCategory classify_lot(Count lot_size, const Plan& plan, const ExactFraction& lq, Count k_whole);

}  // namespace dsp
