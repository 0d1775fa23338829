#include "aixilab/policy.hpp"

namespace aixilab {

Policy::Policy(Kind kind, std::string name, Rule rule)
    : kind_(kind), name_(std::move(name)), rule_(std::make_shared<const Rule>(std::move(rule))) {
  if (!*rule_) throw DomainError("policy '" + name_ + "' has no decision rule");
}

Policy Policy::programmatic(std::string name, Rule rule) {
  return Policy(Kind::programmatic, std::move(name), std::move(rule));
}

Policy Policy::constant(Action action) {
  return programmatic("constant(" + std::to_string(action.index) + ")",
                      [action](const History&) { return action; });
}

Policy Policy::tabular(std::map<History, Action> table, Action fallback, std::string name) {
  auto shared = std::make_shared<const std::map<History, Action>>(std::move(table));
  return Policy(Kind::tabular, std::move(name), [shared, fallback](const History& h) {
    auto it = shared->find(h);
    return it == shared->end() ? fallback : it->second;
  });
}

Policy Policy::truncated(Policy inner, std::size_t depth, Action fallback) {
  std::string name = "truncate(" + inner.name() + ", " + std::to_string(depth) + ")";
  return Policy(Kind::truncated, std::move(name),
                [inner = std::move(inner), depth, fallback](const History& h) {
                  return h.size() < depth ? inner(h) : fallback;
                });
}

std::string to_string(Policy::Kind kind) {
  switch (kind) {
    case Policy::Kind::programmatic: return "programmatic";
    case Policy::Kind::tabular: return "tabular";
    case Policy::Kind::truncated: return "truncated";
    case Policy::Kind::derived_optimal: return "derived_optimal";
  }
  return "unknown";
}

bool consistent_with(const History& h, const Policy& pi) {
  History prefix;
  for (const auto& step : h) {
    if (pi(prefix) != step.action) return false;
    prefix.push_back(step);
  }
  return true;
}

}  // namespace aixilab
