#include "dsp/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dsp {

namespace {

double zero_observation_risk(Count lot_size, Count remaining, const ExactFraction& lq, const PriorSpec& prior) {
  return specific_consumer_risk({lot_size, lot_size - remaining, 0, lq, prior}).risk;
}

double varied(const SensitivityPoint& p, SweepMode mode) { return mode == SweepMode::vary_b ? p.b : p.a; }

}  // namespace

std::string to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::vary_a: return "a";
    case SweepMode::vary_b: return "b";
    case SweepMode::vary_ab: return "ab";
  }
  return "?";
}

SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "a") return SweepMode::vary_a;
  if (text == "b") return SweepMode::vary_b;
  if (text == "ab" || text == "a=b") return SweepMode::vary_ab;
  throw std::invalid_argument("unknown sweep mode '" + std::string(text) + "' (expected a, b or ab)");
}

void Grid::validate() const {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::domain_error("grid requires lo <= hi and step > 0");
  }
}

std::vector<double> Grid::values() const {
  validate();
  // Index-based to avoid accumulating rounding in lo + step + step ...
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::optional<Count> min_required_lot_size(const Plan& plan, const ExactFraction& lq, double limit,
                                           const PriorSpec& prior, std::optional<Count> cap) {
  plan.validate();
  prior.validate();
  if (plan.form != PlanForm::remaining_lot) throw std::invalid_argument("sensitivity needs a remaining-lot plan");
  if (plan.ac != 0) throw std::invalid_argument("sensitivity is defined for zero-acceptance plans");
  const Count r = plan.size;
  const Count last = cap.value_or(10 * (r + 1));
  if (last < r + 1) throw std::domain_error("cap must be at least r + 1");
  if (last > max_lot_size()) throw std::length_error("cap exceeds the maximum lot size");

  for (Count lot = r + 1; lot <= last; ++lot) {
    if (!within_limit(zero_observation_risk(lot, r, lq, prior), limit)) continue;
    const Count lookahead = threshold_period(lq);
    for (Count next = lot + 1; next <= lot + lookahead; ++next) {
      const double risk = zero_observation_risk(next, r, lq, prior);
      if (!within_limit(risk, limit)) {
        std::ostringstream msg;
        msg << "risk of " << plan.str() << " falls within the limit at N=" << lot << " but rises to " << risk
            << " at N=" << next << " (prior a=" << prior.a << ", b=" << prior.b << ")";
        throw MonotonicityViolation(msg.str());
      }
    }
    return lot;
  }
  return std::nullopt;
}

std::vector<SensitivityPoint> sweep(std::span<const Plan> plans, const ExactFraction& lq, double limit,
                                    SweepMode mode, const Grid& grid, double fixed_value,
                                    std::optional<Count> cap) {
  const auto values = grid.values();
  std::vector<SensitivityPoint> out;
  out.reserve(plans.size() * values.size());
  for (const Plan& plan : plans) {
    for (double v : values) {
      PriorSpec prior;
      switch (mode) {
        case SweepMode::vary_a: prior = {v, fixed_value}; break;
        case SweepMode::vary_b: prior = {fixed_value, v}; break;
        case SweepMode::vary_ab: prior = {v, v}; break;
      }
      out.push_back({prior.a, prior.b, plan.size, plan.ac, min_required_lot_size(plan, lq, limit, prior, cap)});
    }
  }
  return out;
}

double estimate_slope(std::span<const SensitivityPoint> points, SweepMode mode) {
  double sx = 0, sy = 0;
  std::size_t count = 0;
  for (const auto& p : points) {
    if (!p.min_required_lot_size) continue;
    sx += varied(p, mode);
    sy += static_cast<double>(*p.min_required_lot_size);
    ++count;
  }
  if (count < 2) throw std::invalid_argument("slope needs at least two points with a minimal lot size");
  const double mx = sx / static_cast<double>(count);
  const double my = sy / static_cast<double>(count);
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    if (!p.min_required_lot_size) continue;
    const double dx = varied(p, mode) - mx;
    sxx += dx * dx;
    sxy += dx * (static_cast<double>(*p.min_required_lot_size) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope needs at least two distinct parameter values");
  return sxy / sxx;
}

std::vector<CurvePoint> risk_curves(CurveAxis axis, std::span<const Count> lot_sizes, const ExactFraction& lq,
                                    const PriorSpec& prior, Count ac) {
  if (ac < 0) throw std::domain_error("acceptance number must be non-negative");
  std::vector<CurvePoint> out;
  for (Count lot : lot_sizes) {
    if (lot < 1) throw std::domain_error("curve lot sizes must be at least 1");
    if (lot > max_lot_size()) throw std::length_error("curve lot size exceeds the maximum lot size");
    for (Count i = 0; i < lot; ++i) {
      const Count n = axis == CurveAxis::sample_size ? i : lot - (i + 1);
      const RiskResult r = max_risk_over_acceptable_outcomes(lot, n, std::min(ac, n), lq, prior);
      out.push_back({lot, axis, axis == CurveAxis::sample_size ? n : lot - n, r.risk, r.threshold_c});
    }
  }
  return out;
}

}  // namespace dsp
