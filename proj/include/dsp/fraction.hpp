#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dsp {

/// Item counts: lot sizes, sample sizes, numbers of nonconforming items.
using Count = std::int64_t;

/// A proportion p/q in (0, 1], kept in lowest terms.
///
/// Limiting quality is held exactly so that thresholds like ceil(0.02 * 50)
/// come out as 1 and never as 2 through floating-point noise.
class ExactFraction {
 public:
  ExactFraction(std::int64_t numerator, std::int64_t denominator);

  /// Accepts "2%", "1/50", "2/100", "0.02" and "1.5%".
  static ExactFraction parse(std::string_view text);

  std::int64_t numerator() const noexcept { return p_; }
  std::int64_t denominator() const noexcept { return q_; }
  double value() const noexcept { return static_cast<double>(p_) / static_cast<double>(q_); }

  /// "p/q"
  std::string str() const;

  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

/// ceil(lq * size) in integer arithmetic.
Count ceil_threshold(const ExactFraction& lq, Count size);

/// ceil(1 / lq), the lot-size period at which thresholds step.
Count threshold_period(const ExactFraction& lq);

}  // namespace dsp
