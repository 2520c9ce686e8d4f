#include "dsp/tabulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dsp {

namespace {

using json = nlohmann::json;

// Remaining-lot plan wins when its mean sample size over the range is
// strictly smaller: mean(N) - r < n  <=>  lo + hi - 2r < 2n.
std::optional<Plan> choose(const LotRange& range, const std::optional<Plan>& remaining,
                           const std::optional<Plan>& sample, RepresentationPolicy policy) {
  switch (policy) {
    case RepresentationPolicy::remaining_lot: return remaining;
    case RepresentationPolicy::sample_size: return sample;
    case RepresentationPolicy::automatic: break;
  }
  if (!remaining) return sample;
  if (!sample) return remaining;
  return range.lo + range.hi - 2 * remaining->size < 2 * sample->size ? remaining : sample;
}

bool plan_ok_at(const Plan& plan, Count lot_size, const DesignCriteria& c) {
  const Count n = plan.sample_size_at(lot_size);
  return within_limit(max_risk_over_acceptable_outcomes(lot_size, n, std::min(plan.ac, n), c.lq, c.prior).risk,
                      c.limit);
}

std::string lq_label(const ExactFraction& lq) {
  const auto scaled = lq.numerator() * 100;
  if (scaled % lq.denominator() == 0) return std::to_string(scaled / lq.denominator()) + "%";
  return lq.str();
}

const char* form_name(PlanForm form) { return form == PlanForm::remaining_lot ? "remaining" : "sample"; }

PlanForm parse_form(const std::string& s) {
  if (s == "remaining") return PlanForm::remaining_lot;
  if (s == "sample") return PlanForm::sample_size;
  throw std::invalid_argument("unknown plan form '" + s + "'");
}

}  // namespace

void PlanTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].range.validate();
    if (i > 0 && rows[i].range.lo != rows[i - 1].range.hi + 1) {
      throw std::domain_error("table ranges must be contiguous and ascending");
    }
    if (rows[i].plan) rows[i].plan->validate();
  }
}

std::vector<LotRange> Breakpoints::ranges() const {
  if (starts.empty()) throw std::domain_error("breakpoints must not be empty");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (starts[i] < 0) throw std::domain_error("breakpoints must be non-negative");
    if (i > 0 && starts[i] <= starts[i - 1]) throw std::domain_error("breakpoints must be strictly ascending");
  }
  if (last < starts.back()) throw std::domain_error("last lot size precedes the final breakpoint");
  std::vector<LotRange> out;
  out.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out.push_back({starts[i], i + 1 < starts.size() ? starts[i + 1] - 1 : last});
  }
  return out;
}

TablePreset table_preset(std::string_view name) {
  if (name == "paper-lq2") {
    return {"paper-lq2", ExactFraction(1, 50), {{0, 50, 99, 160, 216, 267, 317, 501}, 1200}};
  }
  if (name == "paper-lq20") {
    return {"paper-lq20", ExactFraction(1, 5), {{0, 17, 22, 27, 32, 36, 41, 51}, 90}};
  }
  throw std::invalid_argument("unknown table preset '" + std::string(name) + "'");
}

std::vector<std::string_view> table_preset_names() { return {"paper-lq2", "paper-lq20"}; }

std::optional<Plan> design_for_policy(const LotRange& range, const DesignCriteria& criteria,
                                      RepresentationPolicy policy) {
  std::optional<Plan> remaining, sample;
  if (policy != RepresentationPolicy::sample_size) {
    remaining = design_range_plan(range, criteria, PlanForm::remaining_lot);
  }
  if (policy != RepresentationPolicy::remaining_lot) {
    sample = design_range_plan(range, criteria, PlanForm::sample_size);
  }
  return choose(range, remaining, sample, policy);
}

PlanTable build_table(const Breakpoints& breakpoints, const DesignCriteria& criteria, RepresentationPolicy policy) {
  criteria.validate();
  PlanTable table{criteria, {}};
  for (const LotRange& range : breakpoints.ranges()) {
    table.rows.push_back({range, design_for_policy(range, criteria, policy)});
  }
  return table;
}

std::vector<Count> auto_partition(const LotRange& span, const DesignCriteria& criteria,
                                  std::optional<Count> max_overhead) {
  span.validate();
  criteria.validate();
  const Count overhead_limit =
      max_overhead.value_or(criteria.lq.denominator() / criteria.lq.numerator() - 1);
  if (overhead_limit < 1) throw std::domain_error("max_overhead must be at least 1");

  std::map<Count, std::optional<Count>> optimum;
  auto optimal_n = [&](Count lot) -> std::optional<Count> {
    auto it = optimum.find(lot);
    if (it == optimum.end()) {
      it = optimum.emplace(lot, lot >= 1 ? minimal_sample_size(lot, criteria) : std::nullopt).first;
    }
    return it->second;
  };
  auto overhead_ok = [&](const Plan& plan, const LotRange& range) {
    for (Count lot = range.lo; lot <= range.hi; ++lot) {
      const auto best = optimal_n(lot);
      if (!best || plan.sample_size_at(lot) - *best > overhead_limit) return false;
    }
    return true;
  };
  auto single = [&](Count lot) { return design_for_policy({lot, lot}, criteria, RepresentationPolicy::automatic); };

  std::vector<Count> starts{span.lo};
  Count cur = span.lo;
  while (cur <= span.hi) {
    Count end = cur;
    if (!single(cur)) {
      // run of lot sizes with no plan at all
      while (end + 1 <= span.hi && !single(end + 1)) ++end;
    } else {
      LotRange range{cur, cur};
      auto remaining = design_range_plan(range, criteria, PlanForm::remaining_lot);
      auto sample = design_range_plan(range, criteria, PlanForm::sample_size);
      while (end + 1 <= span.hi) {
        const LotRange next{cur, end + 1};
        // Adding a lot size only removes candidates, so a plan that still
        // holds at the new size stays optimal for its form.
        auto still = [&](std::optional<Plan>& p, PlanForm form) {
          if (p && plan_ok_at(*p, next.hi, criteria)) return;
          p = design_range_plan(next, criteria, form);
        };
        auto rem_next = remaining;
        auto samp_next = sample;
        still(rem_next, PlanForm::remaining_lot);
        still(samp_next, PlanForm::sample_size);
        const auto plan = choose(next, rem_next, samp_next, RepresentationPolicy::automatic);
        if (!plan || !overhead_ok(*plan, next)) break;
        remaining = rem_next;
        sample = samp_next;
        end = next.hi;
      }
    }
    cur = end + 1;
    if (cur <= span.hi) starts.push_back(cur);
  }
  return starts;
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "md" || text == "markdown") return TableFormat::markdown;
  if (text == "csv") return TableFormat::csv;
  if (text == "json") return TableFormat::json;
  throw std::invalid_argument("unknown table format '" + std::string(text) + "' (expected md, csv or json)");
}

std::string render_table(const PlanTable& table, TableFormat format) {
  table.validate();
  std::ostringstream out;
  switch (format) {
    case TableFormat::markdown:
      out << "| Lot size | Sampling plan for LQ = " << lq_label(table.criteria.lq) << " |\n";
      out << "|---:|:---:|\n";
      for (const auto& row : table.rows) {
        out << "| " << row.range.str() << " | " << (row.plan ? row.plan->str() : "no plan") << " |\n";
      }
      break;
    case TableFormat::csv:
      out << "lo,hi,form,size,ac\n";
      for (const auto& row : table.rows) {
        out << row.range.lo << ',' << row.range.hi << ',';
        if (row.plan) {
          out << form_name(row.plan->form) << ',' << row.plan->size << ',' << row.plan->ac << '\n';
        } else {
          out << "none,,\n";
        }
      }
      break;
    case TableFormat::json: {
      json rows = json::array();
      for (const auto& row : table.rows) {
        json plan = nullptr;
        if (row.plan) plan = {{"form", form_name(row.plan->form)}, {"size", row.plan->size}, {"ac", row.plan->ac}};
        rows.push_back({{"lo", row.range.lo}, {"hi", row.range.hi}, {"plan", plan}});
      }
      const json doc = {{"metadata",
                         {{"lq", table.criteria.lq.str()},
                          {"limit", table.criteria.limit},
                          {"prior", {table.criteria.prior.a, table.criteria.prior.b}},
                          {"ac", table.criteria.ac}}},
                        {"rows", rows}};
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

PlanTable parse_table_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const json& meta = doc.at("metadata");
    PlanTable table;
    table.criteria.lq = ExactFraction::parse(meta.at("lq").get<std::string>());
    table.criteria.limit = meta.at("limit").get<double>();
    table.criteria.prior = {meta.at("prior").at(0).get<double>(), meta.at("prior").at(1).get<double>()};
    table.criteria.ac = meta.at("ac").get<Count>();
    for (const json& row : doc.at("rows")) {
      TableRow r{{row.at("lo").get<Count>(), row.at("hi").get<Count>()}, std::nullopt};
      if (const json& plan = row.at("plan"); !plan.is_null()) {
        r.plan = Plan{parse_form(plan.at("form").get<std::string>()), plan.at("size").get<Count>(),
                      plan.at("ac").get<Count>()};
      }
      table.rows.push_back(r);
    }
    table.validate();
    return table;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed plan table JSON: ") + e.what());
  }
}

}  // namespace dsp
