#include "aixilab/cli/report.hpp"

namespace aixilab::cli {

json number(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_decimal(r)}}; }

json number(const ValueResult& v) {
  json out = number(v.value);
  out["bound"] = to_string(v.truncation_bound);
  out["horizon"] = v.horizon_used;
  return out;
}

json interval(const Interval& i) {
  if (i.exact()) return number(i.lo);
  return {{"lo", number(i.lo)}, {"hi", number(i.hi)}};
}

std::string to_csv(const Table& table) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    return out + "\n";
  };
  std::string out = line(table.header);
  for (const auto& r : table.rows) out += line(r);
  return out;
}

void Report::check(std::string name, Outcome outcome, const Interval& lhs, const std::string& relation,
                   const Interval& rhs, json extra) {
  json detail = {{"lhs", interval(lhs)}, {"relation", relation}, {"rhs", interval(rhs)}};
  for (auto& [k, v] : extra.items()) detail[k] = v;
  check(std::move(name), outcome, std::move(detail));
}

void Report::check(std::string name, Outcome outcome, json detail) {
  checks_.push_back({std::move(name), outcome, std::move(detail)});
}

Outcome Report::status() const {
  std::vector<Outcome> all;
  for (const auto& c : checks_) all.push_back(c.outcome);
  return combine(all);
}

json Report::to_json(const ExperimentConfig& config) const {
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto& c : checks_) {
    json entry = {{"name", c.name}, {"outcome", to_string(c.outcome)}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
    if (holds(c.outcome)) ++passed;
  }
  return {
      {"experiment", experiment_},
      {"config", config.source},
      {"conventions",
       {{"history_order", "lexicographic per step: action index, then percept index; prefixes first"},
        {"tie_break", config.tie_break.describe()},
        {"discount", config.schedule.describe()},
        {"horizon", config.horizon}}},
      {"status", to_string(status())},
      {"checks_passed", passed},
      {"checks_total", checks_.size()},
      {"checks", std::move(checks)},
      {"results", results_},
  };
}

json with_timing(json report, double seconds) {
  report["timing"] = {{"seconds", seconds}};
  return report;
}

}  // namespace aixilab::cli
