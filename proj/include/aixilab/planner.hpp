#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "aixilab/discount.hpp"
#include "aixilab/environment.hpp"
#include "aixilab/policy.hpp"

namespace aixilab {

/// How the search treats the part of the future beyond the horizon.
/// `truncate` sets it to zero. `absorb` additionally short-circuits any
/// history from which the environment is absorbing (see
/// Environment::absorbing_reward) with the exact closed-form tail r * Gamma_t.
enum class Tail { truncate, absorb };

/// A normalized value V(h) in [0, 1] together with the horizon searched and
/// the bound Gamma_{t+H} / Gamma_t on the omitted tail (t = |h| + 1). The
/// bound is 0 whenever no positive-probability branch was cut off; the true
/// value then equals `value` exactly.
struct ValueResult {
  Rational value;
  std::size_t horizon_used = 0;
  Rational truncation_bound;
};

class TieBreak {
 public:
  enum class Rule { lowest_index, highest_index, fixed_preference };

  static TieBreak lowest_index() { return TieBreak(Rule::lowest_index, {}); }
  static TieBreak highest_index() { return TieBreak(Rule::highest_index, {}); }
  /// `order` must list every action exactly once, most preferred first.
  static TieBreak fixed_preference(std::vector<Action> order);

  /// Picks one action out of a non-empty tie set.
  Action choose(const std::vector<Action>& ties) const;

  Rule rule() const { return rule_; }
  const std::vector<Action>& order() const { return order_; }
  std::string describe() const;

 private:
  TieBreak(Rule rule, std::vector<Action> order) : rule_(rule), order_(std::move(order)) {}

  Rule rule_;
  std::vector<Action> order_;
};

struct ActionChoice {
  Action action;
  /// Every action whose action value equals the best one exactly.
  std::vector<Action> tie_set;
  /// Best action value minus the best non-tied one; 0 when all actions tie.
  Rational gap;
  /// Normalized action values V(ha), indexed by action.
  std::vector<Rational> action_values;
  Rational truncation_bound;
};

/// Exact expectimax over one environment and schedule. Node values are
/// memoized per (history, remaining depth), so a Planner shared by a derived
/// policy answers repeated queries from cache. Safe to use from several
/// threads; results do not depend on evaluation order.
class Planner {
 public:
  enum class Backup { max, min };

  Planner(EnvPtr env, DiscountSchedule schedule, Backup backup, Tail tail = Tail::absorb);

  ValueResult best_value(const History& h, std::size_t horizon) const;
  ActionChoice choose(const History& h, std::size_t horizon, const TieBreak& tb) const;

  const Environment& env() const { return *env_; }
  const DiscountSchedule& schedule() const { return schedule_; }
  Backup backup() const { return backup_; }

 private:
  struct Node {
    Rational total;  // unnormalized: sum of gamma_i r_i over the searched steps
    bool truncated = false;
  };

  Node node(const History& h, std::size_t depth) const;
  Node action_node(const History& h, Action a, std::size_t depth) const;
  std::size_t cap_depth(const History& h, std::size_t horizon) const;

  EnvPtr env_;
  DiscountSchedule schedule_;
  Backup backup_;
  Tail tail_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<History, std::size_t>, Node> memo_;
};

/// V^pi_nu(h), searched `horizon` steps ahead.
ValueResult value(const Policy& pi, const Environment& env, const History& h,
                  const DiscountSchedule& schedule, std::size_t horizon, Tail tail = Tail::absorb);

/// V^pi_nu(ha): action `a` now, pi afterwards.
ValueResult action_value(const Policy& pi, const Environment& env, const History& h, Action a,
                         const DiscountSchedule& schedule, std::size_t horizon,
                         Tail tail = Tail::absorb);

/// V*_nu(h) by max-backups.
ValueResult optimal_value(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                          std::size_t horizon, Tail tail = Tail::absorb);

/// inf_pi V^pi_nu(h) by min-backups.
ValueResult pessimal_value(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                           std::size_t horizon, Tail tail = Tail::absorb);

ActionChoice optimal_action(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                            std::size_t horizon, const TieBreak& tb, Tail tail = Tail::absorb);

ActionChoice pessimal_action(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                             std::size_t horizon, const TieBreak& tb, Tail tail = Tail::absorb);

/// Derived-optimal policy: at every history it plays the tie-broken argmax
/// of a `horizon`-step search. Histories of probability zero have no
/// defined values; there every action counts as tied.
Policy optimal_policy(const EnvPtr& env, const DiscountSchedule& schedule, std::size_t horizon,
                      const TieBreak& tb);

/// As optimal_policy, with min-backups (the expected-reward minimizer).
Policy pessimal_policy(const EnvPtr& env, const DiscountSchedule& schedule, std::size_t horizon,
                       const TieBreak& tb);

}  // namespace aixilab
