#pragma once

#include <string>
#include <vector>

#include "aixilab/certify.hpp"
#include "aixilab/cli/config.hpp"

namespace aixilab::cli {

/// {"exact": "p/q", "decimal": "0.25..."}.
json number(const Rational& r);
/// number() plus "bound" and "horizon".
json number(const ValueResult& v);
json interval(const Interval& i);

struct Check {
  std::string name;
  Outcome outcome;
  json detail;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: comma separated, CRLF-free, fields quoted when they
/// contain a comma, quote or newline.
std::string to_csv(const Table& table);

class Report {
 public:
  explicit Report(std::string experiment) : experiment_(std::move(experiment)) {}

  /// Records `lhs relation rhs` with both sides as enclosures.
  void check(std::string name, Outcome outcome, const Interval& lhs, const std::string& relation,
             const Interval& rhs, json extra = json::object());
  void check(std::string name, Outcome outcome, json detail = json::object());

  json& results() { return results_; }
  Table& table() { return table_; }
  const Table& table() const { return table_; }
  const std::vector<Check>& checks() const { return checks_; }

  /// Worst outcome over all checks (holds_exactly when there are none).
  Outcome status() const;
  /// 0 when every check holds, 1 otherwise.
  int exit_code() const { return holds(status()) ? 0 : 1; }

  /// The deterministic part of the report; `timing` is added separately by
  /// with_timing so comparisons can drop it.
  json to_json(const ExperimentConfig& config) const;

 private:
  std::string experiment_;
  std::vector<Check> checks_;
  json results_ = json::object();
  Table table_;
};

json with_timing(json report, double seconds);

}  // namespace aixilab::cli
