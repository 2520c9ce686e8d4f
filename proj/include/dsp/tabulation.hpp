#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsp/plans.hpp"

namespace dsp {

struct TableRow {
  LotRange range;
  std::optional<Plan> plan;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Rows of lot-size ranges with one plan (or none) each.
struct PlanTable {
  DesignCriteria criteria;
  std::vector<TableRow> rows;

  /// Ranges disjoint, contiguous and ascending.
  void validate() const;

  friend bool operator==(const PlanTable& x, const PlanTable& y) {
    return x.criteria.lq == y.criteria.lq && x.criteria.ac == y.criteria.ac &&
           x.criteria.limit == y.criteria.limit && x.criteria.prior.a == y.criteria.prior.a &&
           x.criteria.prior.b == y.criteria.prior.b && x.rows == y.rows;
  }
};

enum class RepresentationPolicy {
  automatic,  // remaining-lot form when its mean sample size over the range is smaller
  sample_size,
  remaining_lot,
};

/// Range starts plus the last lot size covered.
struct Breakpoints {
  std::vector<Count> starts;
  Count last = 0;

  std::vector<LotRange> ranges() const;
};

/// Published breakpoints and limiting qualities reproducing the reference tables.
struct TablePreset {
  std::string_view name;
  ExactFraction lq;
  Breakpoints breakpoints;
};

/// "paper-lq2" or "paper-lq20"; throws std::invalid_argument otherwise.
TablePreset table_preset(std::string_view name);
std::vector<std::string_view> table_preset_names();

/// Plan for one range under the policy. Sample-size plans never consume a whole lot.
std::optional<Plan> design_for_policy(const LotRange& range, const DesignCriteria& criteria,
                                      RepresentationPolicy policy);

PlanTable build_table(const Breakpoints& breakpoints, const DesignCriteria& criteria,
                      RepresentationPolicy policy = RepresentationPolicy::automatic);

/// Greedy left-to-right partition of the span. A range is extended while its
/// plan's sample size stays within max_overhead of the per-lot minimum at
/// every lot size. Returns range starts; the last range ends at span.hi.
/// Default overhead is floor(1 / LQ) - 1.
std::vector<Count> auto_partition(const LotRange& span, const DesignCriteria& criteria,
                                  std::optional<Count> max_overhead = std::nullopt);

enum class TableFormat { markdown, csv, json };

/// "md"/"markdown", "csv" or "json"; throws std::invalid_argument otherwise.
TableFormat parse_table_format(std::string_view text);

std::string render_table(const PlanTable& table, TableFormat format);

/// Inverse of render_table(..., TableFormat::json).
PlanTable parse_table_json(std::string_view text);

}  // namespace dsp
