#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "aixilab/types.hpp"

namespace aixilab {

/// A deterministic policy pi: H -> A. Cheap to copy; copies share state.
class Policy {
 public:
  enum class Kind { programmatic, tabular, truncated, derived_optimal };

  using Rule = std::function<Action(const History&)>;

  Policy(Kind kind, std::string name, Rule rule);

  static Policy programmatic(std::string name, Rule rule);
  static Policy constant(Action action);
  /// Looks histories up in `table`; anything missing gets `fallback`.
  static Policy tabular(std::map<History, Action> table, Action fallback,
                        std::string name = "tabular");
  /// Agrees with `inner` on histories shorter than `depth`, then plays
  /// `fallback`.
  static Policy truncated(Policy inner, std::size_t depth, Action fallback);

  Action operator()(const History& h) const { return (*rule_)(h); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  Kind kind_;
  std::string name_;
  std::shared_ptr<const Rule> rule_;
};

std::string to_string(Policy::Kind kind);

/// True iff pi(h_{<k}) = a_k for every step k of h.
bool consistent_with(const History& h, const Policy& pi);

}  // namespace aixilab
