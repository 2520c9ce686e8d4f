#include "dsp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsp/cli/external_plans.hpp"
#include "dsp/exact.hpp"
#include "dsp/plans.hpp"
#include "dsp/risk.hpp"
#include "dsp/sensitivity.hpp"
#include "dsp/tabulation.hpp"

namespace dsp::cli {

namespace {

using json = nlohmann::json;

class NoPlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Risks are printed with 6 significant digits.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r\n"));
  s.erase(s.find_last_not_of(" \t\r\n") + 1);
  return s;
}

Count parse_count(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + text + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected a number, got '" + text + "'");
  return v;
}

PriorSpec parse_prior(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("prior must be 'a,b', got '" + text + "'");
  PriorSpec p{parse_real(parts[0]), parse_real(parts[1])};
  p.validate();
  return p;
}

LotRange parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("lot range must be 'LO:HI', got '" + text + "'");
  LotRange r{parse_count(parts[0]), parse_count(parts[1])};
  r.validate();
  return r;
}

// "160,170,...,215", "160:215" or "1,5,9"
std::vector<Count> parse_count_list(const std::string& text) {
  if (text.find(':') != std::string::npos && text.find(',') == std::string::npos) {
    const LotRange r = parse_range(text);
    std::vector<Count> out;
    for (Count v = r.lo; v <= r.hi; ++v) out.push_back(v);
    return out;
  }
  const auto parts = split(text, ',');
  std::vector<Count> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (trim(parts[i]) == "...") {
      if (out.size() < 2 || i + 1 >= parts.size()) {
        throw std::invalid_argument("'...' needs two leading values and an end value");
      }
      const Count step = out[out.size() - 1] - out[out.size() - 2];
      const Count end = parse_count(parts[i + 1]);
      if (step <= 0) throw std::invalid_argument("'...' needs an ascending progression");
      for (Count v = out.back() + step; v < end; v += step) out.push_back(v);
      continue;
    }
    out.push_back(parse_count(parts[i]));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// "50,0" is a sample-size plan, "[5,0]" a remaining-lot plan.
Plan parse_plan(const std::string& text) {
  std::string s = trim(text);
  bool remaining = false;
  if (!s.empty() && (s.front() == '[' || s.front() == '(')) {
    remaining = s.front() == '[';
    const char close = remaining ? ']' : ')';
    if (s.back() != close) throw std::invalid_argument("unbalanced brackets in plan '" + text + "'");
    s = s.substr(1, s.size() - 2);
  }
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw std::invalid_argument("plan must be 'n,Ac' or '[r,Ac]', got '" + text + "'");
  return remaining ? Plan::remaining(parse_count(parts[0]), parse_count(parts[1]))
                   : Plan::sample(parse_count(parts[0]), parse_count(parts[1]));
}

Breakpoints parse_breakpoints(const std::string& text) {
  std::string content = text;
  if (std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    std::ostringstream ss;
    ss << in.rdbuf();
    content = ss.str();
    std::replace_if(content.begin(), content.end(), [](char c) { return c == '\n' || c == ' ' || c == '\t'; }, ',');
    // collapse empty fields
    std::string compact;
    for (char c : content) {
      if (c == ',' && (compact.empty() || compact.back() == ',')) continue;
      compact.push_back(c);
    }
    while (!compact.empty() && compact.back() == ',') compact.pop_back();
    content = compact;
  }
  auto parts = split(content, ',');
  if (parts.empty()) throw std::invalid_argument("empty breakpoints");
  Breakpoints bp;
  const std::string tail = trim(parts.back());
  parts.pop_back();
  for (const auto& p : parts) bp.starts.push_back(parse_count(p));
  if (tail.find(':') != std::string::npos) {
    const LotRange r = parse_range(tail);
    bp.starts.push_back(r.lo);
    bp.last = r.hi;
  } else {
    bp.starts.push_back(parse_count(tail));
    bp.last = bp.starts.back();
  }
  return bp;
}

RepresentationPolicy parse_policy(const std::string& s) {
  if (s == "auto") return RepresentationPolicy::automatic;
  if (s == "sample-size" || s == "sample") return RepresentationPolicy::sample_size;
  if (s == "remaining" || s == "remaining-lot") return RepresentationPolicy::remaining_lot;
  throw std::invalid_argument("representation must be auto, sample-size or remaining");
}

// Options shared by most subcommands.
struct Common {
  std::string lq;
  double limit = 0.1;
  std::string prior = "1,1";
  Count ac = 0;
  std::string out_path;

  void add(CLI::App* cmd, bool lq_required = true) {
    auto* opt = cmd->add_option("--lq", lq, "limiting quality: '2%', '1/50' or '0.02'");
    if (lq_required) opt->required();
    cmd->add_option("--limit", limit, "risk limit")->capture_default_str();
    cmd->add_option("--prior", prior, "beta-binomial prior 'a,b'")->capture_default_str();
    cmd->add_option("--ac", ac, "acceptance number")->capture_default_str();
  }

  DesignCriteria criteria() const {
    DesignCriteria c{ExactFraction::parse(lq), ac, limit, parse_prior(prior)};
    c.validate();
    return c;
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f << text;
}

// --- risk --------------------------------------------------------------------

struct RiskArgs {
  Common common;
  Count lot_size = 0;
  Count sample_size = 0;
  Count observed = 0;
  std::optional<Count> acceptance;
  bool oracle = false;
  bool frequentist = false;
  bool frequentist_remaining = false;
  std::string format = "text";
};

int cmd_risk(const RiskArgs& a, std::ostream& out, std::ostream& err) {
  const ExactFraction lq = ExactFraction::parse(a.common.lq);
  if (a.frequentist_remaining) {
    try {
      frequentist_remaining_risk(a.lot_size, a.sample_size, a.acceptance.value_or(0), lq);
    } catch (const NotComputable& e) {
      err << e.what() << '\n';
      return kNotComputable;
    }
  }
  if (a.frequentist) {
    const Count ac = a.acceptance.value_or(0);
    const double risk = frequentist_consumer_risk(a.lot_size, a.sample_size, ac, lq);
    const Count k = ceil_threshold(lq, a.lot_size);
    if (a.format == "json") {
      out << json{{"frequentist_consumer_risk", risk}, {"nonconforming_at_lq", k}}.dump(2) << '\n';
    } else {
      out << "frequentist_consumer_risk: " << fmt(risk) << '\n' << "nonconforming_at_lq: " << k << '\n';
    }
    return kSuccess;
  }

  const PriorSpec prior = parse_prior(a.common.prior);
  RiskResult result = a.acceptance
                          ? max_risk_over_acceptable_outcomes(a.lot_size, a.sample_size, *a.acceptance, lq, prior)
                          : specific_consumer_risk({a.lot_size, a.sample_size, a.observed, lq, prior});
  const RiskQuery query{a.lot_size, a.sample_size, result.observed, lq, prior};
  flag_boundary_tie(result, query, a.common.limit);

  std::optional<double> sup_norm;
  if (a.oracle) {
    const auto brute = brute_force_posterior(query);
    const auto closed = beta_binomial_pmf_vector(posterior_remaining(query));
    double d = 0.0;
    for (std::size_t i = 0; i < brute.size(); ++i) d = std::max(d, std::abs(brute[i] - closed[i]));
    sup_norm = d;
  }

  if (a.format == "json") {
    json doc = {{"risk", result.risk},
                {"threshold_c", result.threshold_c},
                {"observed", result.observed},
                {"posterior", {{"trials", result.posterior_trials}, {"a", result.posterior_a}, {"b", result.posterior_b}}},
                {"limit", a.common.limit},
                {"within_limit", within_limit(result.risk, a.common.limit)},
                {"boundary_tie", result.boundary_tie}};
    doc["exact_tie"] = result.exact_tie ? json(*result.exact_tie) : json(nullptr);
    if (sup_norm) doc["oracle_sup_norm"] = *sup_norm;
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "risk: " << fmt(result.risk) << '\n';
  out << "threshold_c: " << result.threshold_c << '\n';
  out << "observed: " << result.observed << '\n';
  out << "posterior: beta-binomial(trials=" << result.posterior_trials << ", a=" << fmt(result.posterior_a)
      << ", b=" << fmt(result.posterior_b) << ")\n";
  out << "within_limit: " << (within_limit(result.risk, a.common.limit) ? "yes" : "no") << " (limit "
      << fmt(a.common.limit) << ")\n";
  out << "boundary_tie: " << (result.boundary_tie ? "yes" : "no") << '\n';
  if (result.exact_tie) out << "exact_tie: " << (*result.exact_tie ? "yes" : "no") << '\n';
  if (sup_norm) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", *sup_norm);
    out << "oracle_sup_norm: " << buf << '\n';
  }
  return kSuccess;
}

// --- design ------------------------------------------------------------------

struct DesignArgs {
  Common common;
  std::optional<Count> lot_size;
  std::string lot_range;
  std::string representation = "auto";
  bool allow_census = false;
};

int cmd_design(const DesignArgs& a, std::ostream& out) {
  const DesignCriteria criteria = a.common.criteria();
  const RepresentationPolicy policy = parse_policy(a.representation);
  if (a.lot_size.has_value() == !a.lot_range.empty()) {
    throw CLI::ValidationError("design", "exactly one of --lot-size or --lot-range is required");
  }
  if (a.lot_size) {
    const Count lot = *a.lot_size;
    const auto n = minimal_sample_size(lot, criteria);
    if (!n) throw NoPlan("no plan: no sample size leaving a remaining lot limits the risk at N=" + std::to_string(lot));
    const Plan plan = policy == RepresentationPolicy::remaining_lot ? Plan::remaining(lot - *n, criteria.ac)
                                                                    : Plan::sample(*n, criteria.ac);
    out << plan.str() << '\n';
    return kSuccess;
  }
  const LotRange range = parse_range(a.lot_range);
  std::optional<Plan> plan;
  if (policy == RepresentationPolicy::sample_size && a.allow_census) {
    plan = design_range_plan(range, criteria, PlanForm::sample_size, CensusPolicy::allow);
  } else {
    plan = design_for_policy(range, criteria, policy);
  }
  if (!plan) {
    switch (policy) {
      case RepresentationPolicy::sample_size:
        throw NoPlan("no plan leaving a remaining lot for every lot size in " + range.str());
      case RepresentationPolicy::remaining_lot:
        throw NoPlan("no plan: no remaining-lot size limits the risk across " + range.str());
      case RepresentationPolicy::automatic:
        throw NoPlan("no plan limits the risk across " + range.str());
    }
  }
  out << plan->str() << '\n';
  return kSuccess;
}

// --- table -------------------------------------------------------------------

struct TableArgs {
  Common common;
  std::string preset;
  std::string breakpoints;
  std::string partition;
  std::optional<Count> max_overhead;
  std::string representation = "auto";
  std::string format = "md";
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  const int sources = !a.preset.empty() + !a.breakpoints.empty() + !a.partition.empty();
  if (sources != 1) {
    throw CLI::ValidationError("table", "exactly one of --preset, --breakpoints or --partition is required");
  }
  const TableFormat format = parse_table_format(a.format);
  Common common = a.common;
  Breakpoints bp;
  if (!a.preset.empty()) {
    const TablePreset preset = table_preset(a.preset);
    if (common.lq.empty()) common.lq = preset.lq.str();
    bp = preset.breakpoints;
  } else if (common.lq.empty()) {
    throw CLI::ValidationError("table", "--lq is required without --preset");
  }
  const DesignCriteria criteria = common.criteria();
  if (!a.breakpoints.empty()) bp = parse_breakpoints(a.breakpoints);
  if (!a.partition.empty()) {
    const LotRange span = parse_range(a.partition);
    bp = {auto_partition(span, criteria, a.max_overhead), span.hi};
  }
  const PlanTable table = build_table(bp, criteria, parse_policy(a.representation));
  emit(render_table(table, format), a.common.out_path, out);
  return kSuccess;
}

// --- compare -----------------------------------------------------------------

struct CompareArgs {
  Common common;
  std::string plans_path;
};

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  ExternalPlanSet set;
  try {
    set = read_external_plans_file(a.plans_path);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("compare", e.what());
  }
  const DesignCriteria criteria = a.common.criteria();
  std::ostringstream o;
  o << "# external plans: " << (set.label.empty() ? a.plans_path : set.label) << '\n';
  o << "# lq " << criteria.lq.str() << ", limit " << fmt(criteria.limit) << ", prior " << fmt(criteria.prior.a)
    << ',' << fmt(criteria.prior.b) << '\n';
  o << "lo,hi,plan,worst_N,worst_risk,exceedances\n";

  std::optional<Plan> max_plan;
  Count max_lot = 0;
  double max_risk = -1.0;
  Count total = 0, exceeding = 0;
  for (const auto& [range, plan] : set.rows) {
    Count worst_lot = range.lo, count = 0;
    double worst = -1.0;
    for (Count lot = range.lo; lot <= range.hi; ++lot) {
      const Count n = plan.sample_size_at(lot);
      const double risk =
          max_risk_over_acceptable_outcomes(lot, n, std::min(plan.ac, n), criteria.lq, criteria.prior).risk;
      ++total;
      if (!within_limit(risk, criteria.limit)) ++count;
      if (risk > worst) {
        worst = risk;
        worst_lot = lot;
      }
    }
    exceeding += count;
    o << range.lo << ',' << range.hi << ',' << csv_quote(plan.str()) << ',' << worst_lot << ',' << fmt(worst) << ','
      << count << '\n';
    if (worst > max_risk) {
      max_risk = worst;
      max_lot = worst_lot;
      max_plan = plan;
    }
  }
  if (max_plan) {
    o << "# maximum: " << max_plan->str() << " at N=" << max_lot << " risk " << fmt(max_risk) << '\n';
  }
  o << "# exceedances: " << exceeding << " of " << total << " lot sizes exceed " << fmt(criteria.limit) << '\n';
  emit(o.str(), a.common.out_path, out);
  return kSuccess;
}

// --- classify / curves / sensitivity ------------------------------------------

struct ClassifyArgs {
  Common common;
  std::optional<Count> lot_size;
  std::string lot_range;
  std::string plan;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  if (a.lot_size.has_value() == !a.lot_range.empty()) {
    throw CLI::ValidationError("classify", "exactly one of --lot-size or --lot-range is required");
  }
  const ExactFraction lq = ExactFraction::parse(a.common.lq);
  const Plan plan = parse_plan(a.plan);
  const LotRange range = a.lot_size ? LotRange{*a.lot_size, *a.lot_size} : parse_range(a.lot_range);
  range.validate();
  if (range.hi > max_lot_size()) throw std::length_error("lot size exceeds the maximum lot size");
  std::ostringstream o;
  o << "N,k_whole,category\n";
  for (Count lot = range.lo; lot <= range.hi; ++lot) {
    if (!plan.applicable_to(lot)) continue;
    for (Count k = 0; k <= lot; ++k) o << lot << ',' << k << ',' << to_string(classify_lot(lot, plan, lq, k)) << '\n';
  }
  emit(o.str(), a.common.out_path, out);
  return kSuccess;
}

struct CurvesArgs {
  Common common;
  std::string mode = "sample";
  std::string lot_sizes;
};

int cmd_curves(const CurvesArgs& a, std::ostream& out) {
  CurveAxis axis;
  if (a.mode == "sample" || a.mode == "sample-size") {
    axis = CurveAxis::sample_size;
  } else if (a.mode == "remaining" || a.mode == "remaining-size") {
    axis = CurveAxis::remaining_size;
  } else {
    throw CLI::ValidationError("curves", "--mode must be sample or remaining");
  }
  const auto lots = parse_count_list(a.lot_sizes);
  const auto points =
      risk_curves(axis, lots, ExactFraction::parse(a.common.lq), parse_prior(a.common.prior), a.common.ac);
  std::ostringstream o;
  o << "N,x_kind,x,risk,threshold_c\n";
  for (const auto& p : points) {
    o << p.lot_size << ',' << (p.axis == CurveAxis::sample_size ? 'n' : 'r') << ',' << p.x << ',' << fmt(p.risk) << ','
      << p.threshold_c << '\n';
  }
  emit(o.str(), a.common.out_path, out);
  return kSuccess;
}

struct SensitivityArgs {
  Common common;
  std::string plans;
  std::string vary = "a";
  std::optional<double> fixed_a;
  std::optional<double> fixed_b;
  std::string grid;
  std::optional<Count> cap;
  bool slopes = false;
};

int cmd_sensitivity(const SensitivityArgs& a, std::ostream& out) {
  const SweepMode mode = parse_sweep_mode(a.vary);
  if (a.common.ac != 0) throw CLI::ValidationError("sensitivity", "only zero-acceptance plans are supported");
  const ExactFraction lq = ExactFraction::parse(a.common.lq);
  std::vector<Plan> plans;
  for (Count r : parse_count_list(a.plans)) plans.push_back(Plan::remaining(r, 0));

  Grid grid;
  switch (mode) {
    case SweepMode::vary_a: grid = {0.6, 1.6, 0.05}; break;
    case SweepMode::vary_b: grid = {1.0, 71.0, 1.0}; break;
    case SweepMode::vary_ab: grid = {0.6, 1.6, 0.05}; break;
  }
  if (!a.grid.empty()) {
    const auto parts = split(a.grid, ':');
    if (parts.size() != 3) throw CLI::ValidationError("sensitivity", "--grid must be LO:HI:STEP");
    grid = {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
  }
  double fixed = 1.0;
  if (mode == SweepMode::vary_a) {
    if (a.fixed_a) throw CLI::ValidationError("sensitivity", "--fixed-a conflicts with --vary a");
    fixed = a.fixed_b.value_or(1.0);
  } else if (mode == SweepMode::vary_b) {
    if (a.fixed_b) throw CLI::ValidationError("sensitivity", "--fixed-b conflicts with --vary b");
    fixed = a.fixed_a.value_or(1.0);
  }

  const auto points = sweep(plans, lq, a.common.limit, mode, grid, fixed, a.cap);

  std::ostringstream o;
  if (a.slopes) {
    o << "plan_r,mode,slope\n";
    for (const Plan& plan : plans) {
      std::vector<SensitivityPoint> mine;
      std::copy_if(points.begin(), points.end(), std::back_inserter(mine),
                   [&](const SensitivityPoint& p) { return p.plan_r == plan.size; });
      o << plan.size << ',' << to_string(mode) << ',' << fmt(estimate_slope(mine, mode)) << '\n';
    }
  } else {
    o << "plan_r,ac,mode,a,b,min_required_N\n";
    for (const auto& p : points) {
      o << p.plan_r << ',' << p.ac << ',' << to_string(mode) << ',' << fmt(p.a) << ',' << fmt(p.b) << ',';
      if (p.min_required_lot_size) o << *p.min_required_lot_size;
      o << '\n';
    }
  }
  emit(o.str(), a.common.out_path, out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acceptance sampling plans for destructive testing", "dsp"};
  app.require_subcommand(1);

  RiskArgs risk;
  auto* risk_cmd = app.add_subcommand("risk", "specific consumer's risk for the remaining lot");
  risk.common.add(risk_cmd);
  risk_cmd->add_option("--lot-size", risk.lot_size, "lot size N")->required();
  risk_cmd->add_option("--sample-size", risk.sample_size, "sample size n")->required();
  risk_cmd->add_option("--observed", risk.observed, "nonconforming items found in the sample")->capture_default_str();
  risk_cmd->add_option("--acceptance-number", risk.acceptance,
                       "maximize over all acceptable observations y <= Ac");
  risk_cmd->add_flag("--oracle", risk.oracle, "cross-check the posterior against brute-force Bayes");
  risk_cmd->add_flag("--frequentist", risk.frequentist, "consumer's risk for the whole lot");
  risk_cmd->add_flag("--frequentist-remaining", risk.frequentist_remaining,
                     "consumer's risk for the remaining lot (not computable)");
  risk_cmd->add_option("--format", risk.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design", "minimal plan for a lot size or a range of lot sizes");
  design.common.add(design_cmd);
  design_cmd->add_option("--lot-size", design.lot_size, "single lot size N");
  design_cmd->add_option("--lot-range", design.lot_range, "range LO:HI");
  design_cmd->add_option("--representation", design.representation, "auto, sample-size or remaining")
      ->capture_default_str();
  design_cmd->add_flag("--allow-census", design.allow_census,
                       "sample-size range plans may consume whole lots at small lot sizes");

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "tabulate range plans");
  table.common.add(table_cmd, false);
  table_cmd->add_option("--preset", table.preset, "paper-lq2 or paper-lq20");
  table_cmd->add_option("--breakpoints", table.breakpoints,
                        "range starts, last one as LO:HI (e.g. 0,50,99:159), or a file of them");
  table_cmd->add_option("--partition", table.partition, "choose ranges automatically over LO:HI");
  table_cmd->add_option("--max-overhead", table.max_overhead, "partition: allowed excess over the per-lot minimum");
  table_cmd->add_option("--representation", table.representation, "auto, sample-size or remaining")
      ->capture_default_str();
  table_cmd->add_option("--format", table.format, "md, csv or json")->capture_default_str();
  table_cmd->add_option("--out", table.common.out_path, "write to file instead of stdout");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "evaluate externally supplied plans");
  compare.common.add(compare_cmd);
  compare_cmd->add_option("--plans", compare.plans_path, "plan file: LO HI FORM SIZE AC per line")->required();
  compare_cmd->add_option("--out", compare.common.out_path, "write to file instead of stdout");

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "lot quality before and after an acceptable sample");
  classify.common.add(classify_cmd);
  classify_cmd->add_option("--lot-size", classify.lot_size, "lot size N");
  classify_cmd->add_option("--lot-range", classify.lot_range, "range LO:HI");
  classify_cmd->add_option("--plan", classify.plan, "'n,Ac' or '[r,Ac]'")->required();
  classify_cmd->add_option("--out", classify.common.out_path, "write to file instead of stdout");

  CurvesArgs curves;
  auto* curves_cmd = app.add_subcommand("curves", "risk over sample size or remaining lot size");
  curves.common.add(curves_cmd);
  curves_cmd->add_option("--mode", curves.mode, "sample or remaining")->capture_default_str();
  curves_cmd->add_option("--lot-sizes", curves.lot_sizes, "e.g. 160,170,...,210 or 160:215")->required();
  curves_cmd->add_option("--out", curves.common.out_path, "write to file instead of stdout");

  SensitivityArgs sens;
  auto* sens_cmd = app.add_subcommand("sensitivity", "minimal lot sizes of [r, 0] plans under beta-binomial priors");
  sens.common.add(sens_cmd);
  sens_cmd->add_option("--plans", sens.plans, "remaining lot sizes, e.g. 51,101,151")->required();
  sens_cmd->add_option("--vary", sens.vary, "a, b or ab")->capture_default_str();
  sens_cmd->add_option("--fixed-a", sens.fixed_a, "a when varying b");
  sens_cmd->add_option("--fixed-b", sens.fixed_b, "b when varying a");
  sens_cmd->add_option("--grid", sens.grid, "LO:HI:STEP");
  sens_cmd->add_option("--cap", sens.cap, "largest lot size searched");
  sens_cmd->add_flag("--slopes", sens.slopes, "print least-squares slopes per plan");
  sens_cmd->add_option("--out", sens.common.out_path, "write to file instead of stdout");

  std::vector<const char*> argv{"dsp"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*risk_cmd) return cmd_risk(risk, out, err);
    if (*design_cmd) return cmd_design(design, out);
    if (*table_cmd) return cmd_table(table, out);
    if (*compare_cmd) return cmd_compare(compare, out);
    if (*classify_cmd) return cmd_classify(classify, out);
    if (*curves_cmd) return cmd_curves(curves, out);
    if (*sens_cmd) return cmd_sensitivity(sens, out);
  } catch (const NoPlan& e) {
    out << e.what() << '\n';
    return kNoPlan;
  } catch (const NotComputable& e) {
    err << "not computable: " << e.what() << '\n';
    return kNotComputable;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNoPlan;
  }
  return kUsage;
}

}  // namespace dsp::cli
