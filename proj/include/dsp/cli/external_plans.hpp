#pragma once

#include <istream>
#include <string>
#include <vector>

#include "dsp/plans.hpp"

namespace dsp::cli {

/// Plans supplied from outside, e.g. a published standard's table.
///
/// Text format, one row per line:
///
///     LO HI FORM SIZE AC      FORM is "sample" or "remaining"
///
/// '#' starts a comment. A comment of the form "# label: <text>" sets the
/// provenance label.
struct ExternalPlanSet {
  std::string label;
  std::vector<std::pair<LotRange, Plan>> rows;
};

/// Throws std::invalid_argument with the offending line number.
ExternalPlanSet read_external_plans(std::istream& in);
ExternalPlanSet read_external_plans_file(const std::string& path);

}  // namespace dsp::cli
