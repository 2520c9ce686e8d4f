#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsp/plans.hpp"

namespace dsp {

/// Minimal lot size at which a remaining-lot plan holds under prior (a, b).
struct SensitivityPoint {
  double a = 1.0;
  double b = 1.0;
  Count plan_r = 0;
  Count ac = 0;
  std::optional<Count> min_required_lot_size;
};

enum class SweepMode { vary_a, vary_b, vary_ab };

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view text);

/// Inclusive arithmetic grid lo, lo + step, ..., <= hi.
struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  void validate() const;
  std::vector<double> values() const;
};

/// Raised when the risk rises back above the limit shortly after the first
/// qualifying lot size.
class MonotonicityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest N in {r + 1, ..., cap} at which [r, 0] meets the limit, verified
/// to hold for the following ceil(1 / LQ) lot sizes. Default cap 10 (r + 1).
std::optional<Count> min_required_lot_size(const Plan& plan, const ExactFraction& lq, double limit,
                                           const PriorSpec& prior, std::optional<Count> cap = std::nullopt);

/// Points ordered by plan, then grid value.
std::vector<SensitivityPoint> sweep(std::span<const Plan> plans, const ExactFraction& lq, double limit,
                                    SweepMode mode, const Grid& grid, double fixed_value,
                                    std::optional<Count> cap = std::nullopt);

/// Least-squares slope of the minimal lot size against the varied parameter.
/// Points without a lot size are skipped; fewer than two remaining throws
/// std::invalid_argument.
double estimate_slope(std::span<const SensitivityPoint> points, SweepMode mode);

enum class CurveAxis { sample_size, remaining_size };

struct CurvePoint {
  Count lot_size = 0;
  CurveAxis axis = CurveAxis::sample_size;
  Count x = 0;  // n or r
  double risk = 0.0;
  Count threshold_c = 0;
};

/// Risk over n in {0..N-1} or over r in {1..N} for each lot size.
std::vector<CurvePoint> risk_curves(CurveAxis axis, std::span<const Count> lot_sizes, const ExactFraction& lq,
                                    const PriorSpec& prior, Count ac = 0);

}  // namespace dsp
