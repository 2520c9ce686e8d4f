#include "dsp/cli/external_plans.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsp::cli {

ExternalPlanSet read_external_plans(std::istream& in) {
  ExternalPlanSet set;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("external plans, line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      const std::string comment = line.substr(hash + 1);
      if (auto pos = comment.find("label:"); pos != std::string::npos && set.label.empty()) {
        std::string label = comment.substr(pos + 6);
        label.erase(0, label.find_first_not_of(" \t"));
        label.erase(label.find_last_not_of(" \t\r") + 1);
        set.label = label;
      }
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string form;
    Count lo = 0, hi = 0, size = 0, ac = 0;
    if (!(fields >> lo)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fail("expected 'LO HI FORM SIZE AC'");
    }
    if (!(fields >> hi >> form >> size >> ac)) fail("expected 'LO HI FORM SIZE AC'");
    std::string extra;
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    Plan plan;
    try {
      if (form == "sample") {
        plan = Plan::sample(size, ac);
      } else if (form == "remaining") {
        plan = Plan::remaining(size, ac);
      } else {
        fail("FORM must be 'sample' or 'remaining', got '" + form + "'");
      }
      const LotRange range{lo, hi};
      range.validate();
      if (plan.form == PlanForm::remaining_lot && lo < size + 1) {
        fail("remaining-lot plan " + plan.str() + " needs lot sizes above " + std::to_string(size));
      }
      set.rows.emplace_back(range, plan);
    } catch (const std::domain_error& e) {
      fail(e.what());
    }
  }
  auto sorted = set.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first.lo <= sorted[i - 1].first.hi) {
      throw std::invalid_argument("external plans: ranges " + sorted[i - 1].first.str() + " and " +
                                  sorted[i].first.str() + " overlap");
    }
  }
  return set;
}

ExternalPlanSet read_external_plans_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open external plan file '" + path + "'");
  return read_external_plans(in);
}

}  // namespace dsp::cli
