#include "dsp/plans.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace dsp {

namespace {

constexpr Count kDefaultMaxLotSize = 100'000;

void check_scale(Count lot_size) {
  if (lot_size > max_lot_size()) {
    throw std::length_error("lot size " + std::to_string(lot_size) + " exceeds the limit of " +
                            std::to_string(max_lot_size()) + " (set DSP_MAX_LOT_SIZE to raise it)");
  }
}

RiskQuery query_at(Count lot_size, Count sample_size, Count observed, const DesignCriteria& c) {
  return {lot_size, sample_size, observed, c.lq, c.prior};
}

RiskResult plan_risk_at(const Plan& plan, Count lot_size, const DesignCriteria& c) {
  const Count n = plan.sample_size_at(lot_size);
  return max_risk_over_acceptable_outcomes(lot_size, n, std::min(plan.ac, n), c.lq, c.prior);
}

// First lot size in the range at which the plan exceeds the limit.
std::optional<Count> first_violation(const Plan& plan, const LotRange& range, const DesignCriteria& c) {
  for (Count lot = range.lo; lot <= range.hi; ++lot) {
    if (!within_limit(plan_risk_at(plan, lot, c).risk, c.limit)) return lot;
  }
  return std::nullopt;
}

}  // namespace

Plan Plan::sample(Count n, Count ac) {
  Plan p{PlanForm::sample_size, n, ac};
  p.validate();
  return p;
}

Plan Plan::remaining(Count r, Count ac) {
  Plan p{PlanForm::remaining_lot, r, ac};
  p.validate();
  return p;
}

void Plan::validate() const {
  if (ac < 0) throw std::domain_error("acceptance number must be non-negative");
  if (size < 0) throw std::domain_error("plan size must be non-negative");
  if (form == PlanForm::remaining_lot && size < 1) {
    throw std::domain_error("a remaining-lot plan needs a remaining lot of at least one item");
  }
}

bool Plan::applicable_to(Count lot_size) const noexcept {
  return form == PlanForm::sample_size ? lot_size >= 0 : lot_size >= size;
}

Count Plan::sample_size_at(Count lot_size) const {
  if (!applicable_to(lot_size)) {
    throw RangeIncompatible("plan " + str() + " cannot be applied to lot size " + std::to_string(lot_size));
  }
  return form == PlanForm::sample_size ? std::min(size, lot_size) : lot_size - size;
}

std::string Plan::str() const {
  const std::string body = std::to_string(size) + ", " + std::to_string(ac);
  return form == PlanForm::sample_size ? "(" + body + ")" : "[" + body + "]";
}

void LotRange::validate() const {
  if (lo < 0 || hi < lo) {
    throw std::domain_error("lot range requires 0 <= lo <= hi, got " + str());
  }
}

std::string LotRange::str() const { return std::to_string(lo) + "-" + std::to_string(hi); }

void DesignCriteria::validate() const {
  if (ac < 0) throw std::domain_error("acceptance number must be non-negative");
  if (!(limit > 0.0 && limit < 1.0)) throw std::domain_error("risk limit must lie in (0, 1)");
  prior.validate();
}

std::string to_string(LotCategory category) {
  switch (category) {
    case LotCategory::green: return "green";
    case LotCategory::olive: return "olive";
    case LotCategory::orange: return "orange";
    case LotCategory::red: return "red";
    case LotCategory::never_accepted: return "never-accepted";
  }
  return "unknown";
}

Count max_lot_size() {
  if (const char* env = std::getenv("DSP_MAX_LOT_SIZE"); env != nullptr && *env != '\0') {
    Count v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v > 0) return v;
    throw std::invalid_argument(std::string("DSP_MAX_LOT_SIZE is not a positive integer: ") + env);
  }
  return kDefaultMaxLotSize;
}

std::optional<Count> minimal_sample_size(Count lot_size, const DesignCriteria& criteria) {
  criteria.validate();
  if (lot_size < 1) throw std::domain_error("lot size must be at least 1");
  check_scale(lot_size);
  const Plan probe{PlanForm::sample_size, 0, criteria.ac};
  for (Count n = 0; n < lot_size; ++n) {
    Plan p = probe;
    p.size = n;
    if (within_limit(plan_risk_at(p, lot_size, criteria).risk, criteria.limit)) return n;
  }
  return std::nullopt;
}

RangeReport validate_plan_for_range(const Plan& plan, const LotRange& range, const DesignCriteria& criteria) {
  plan.validate();
  range.validate();
  criteria.validate();
  check_scale(range.hi);
  if (plan.form == PlanForm::remaining_lot && range.lo < plan.size + 1) {
    throw RangeIncompatible("remaining-lot plan " + plan.str() + " needs lot sizes of at least " +
                            std::to_string(plan.size + 1) + ", range starts at " + std::to_string(range.lo));
  }
  RangeReport report;
  bool first = true;
  for (Count lot = range.lo; lot <= range.hi; ++lot) {
    const Count n = plan.sample_size_at(lot);
    if (n == lot) report.census_lot_sizes.push_back(lot);
    RiskResult r = plan_risk_at(plan, lot, criteria);
    if (first || r.risk > report.binding.risk) {
      report.binding = r;
      report.binding_lot_size = lot;
      first = false;
    }
  }
  report.valid = within_limit(report.binding.risk, criteria.limit);
  const Count n = plan.sample_size_at(report.binding_lot_size);
  flag_boundary_tie(report.binding, query_at(report.binding_lot_size, n, report.binding.observed, criteria),
                    criteria.limit);
  return report;
}

std::optional<Plan> design_range_plan(const LotRange& range, const DesignCriteria& criteria, PlanForm form,
                                      CensusPolicy census) {
  range.validate();
  criteria.validate();
  check_scale(range.hi);
  if (form == PlanForm::remaining_lot) {
    for (Count r = range.lo - 1; r >= 1; --r) {
      const Plan p{PlanForm::remaining_lot, r, criteria.ac};
      if (!first_violation(p, range, criteria)) return p;
    }
    return std::nullopt;
  }
  const Count top = census == CensusPolicy::allow ? range.hi : range.lo - 1;
  for (Count n = 0; n <= top; ++n) {
    const Plan p{PlanForm::sample_size, n, criteria.ac};
    if (!first_violation(p, range, criteria)) return p;
  }
  return std::nullopt;
}

LotCategory classify_lot(Count lot_size, const Plan& plan, const ExactFraction& lq, Count k_whole) {
  plan.validate();
  if (lot_size < 0 || k_whole < 0 || k_whole > lot_size) {
    throw std::domain_error("classification requires 0 <= k_whole <= N");
  }
  const Count n = plan.sample_size_at(lot_size);
  const Count remaining = lot_size - n;
  const bool bad_before = k_whole >= ceil_threshold(lq, lot_size);
  const Count c_rem = ceil_threshold(lq, remaining);

  const Count y_lo = std::max<Count>(0, n - (lot_size - k_whole));
  const Count y_hi = std::min({n, k_whole, plan.ac});
  if (y_lo > y_hi) return LotCategory::never_accepted;

  bool any_bad_after = false;
  bool any_good_after = false;
  for (Count y = y_lo; y <= y_hi; ++y) {
    // An empty remaining lot holds nothing unsatisfactory.
    const bool bad_after = remaining > 0 && k_whole - y >= c_rem;
    (bad_after ? any_bad_after : any_good_after) = true;
  }
  if (any_bad_after && any_good_after) return LotCategory::olive;
  if (any_bad_after) return bad_before ? LotCategory::red : LotCategory::orange;
  // Good after every acceptable sample. A lot that was bad before but is
  // always fine afterwards has no color of its own and counts as olive.
  return bad_before ? LotCategory::olive : LotCategory::green;
}

}  // namespace dsp
