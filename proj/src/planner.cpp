#include "aixilab/planner.hpp"

#include <algorithm>

namespace aixilab {

namespace {

std::vector<Action> all_actions(const Alphabet& alphabet) {
  std::vector<Action> out;
  for (std::size_t a = 0; a < alphabet.num_actions(); ++a) out.push_back(Action{a});
  return out;
}

void require_positive(const Environment& env, const History& h) {
  if (joint_prob(env, h) == 0) {
    throw MeasureZeroHistory("environment '" + env.name() + "' assigns probability 0 to history " +
                             h.str());
  }
}

std::size_t capped_depth(const DiscountSchedule& schedule, const History& h, std::size_t horizon) {
  if (auto m = schedule.lifetime()) {
    const std::size_t t = h.size() + 1;
    const std::size_t remaining = *m >= t ? *m - t + 1 : 0;
    return std::min(horizon, remaining);
  }
  return horizon;
}

Rational normalized(const Rational& total, const Rational& big_gamma) {
  return big_gamma == 0 ? Rational(0) : Rational(total / big_gamma);
}

Rational tail_bound(const DiscountSchedule& schedule, const History& h, std::size_t depth,
                    bool truncated) {
  if (!truncated) return Rational(0);
  const std::size_t t = h.size() + 1;
  return schedule.big_gamma(t + depth) / schedule.big_gamma(t);
}

// Expected discounted reward of following pi, without memoization: the
// policy fixes one action per node, so the search is a plain tree walk.
struct PolicyWalk {
  const Policy& pi;
  const Environment& env;
  const DiscountSchedule& schedule;
  Tail tail;
  bool truncated = false;

  Rational node(History& h, std::size_t depth) {
    const Rational big_gamma = schedule.big_gamma(h.size() + 1);
    if (big_gamma == 0) return Rational(0);
    if (tail == Tail::absorb) {
      if (auto r = env.absorbing_reward(h)) return *r * big_gamma;
    }
    if (depth == 0) {
      truncated = true;
      return Rational(0);
    }
    return action_node(h, pi(h), depth);
  }

  Rational action_node(History& h, Action a, std::size_t depth) {
    const std::size_t t = h.size() + 1;
    const Rational gamma_t = schedule.gamma(t);
    const Distribution dist = env.step(h, a);
    Rational total(0);
    for (PerceptId e = 0; e < dist.size(); ++e) {
      if (dist[e] == 0) continue;
      h.push_back({a, e});
      total += dist[e] * (gamma_t * env.alphabet().reward(e) + node(h, depth - 1));
      h.pop_back();
    }
    return total;
  }
};

}  // namespace

// --- TieBreak -------------------------------------------------------------

TieBreak TieBreak::fixed_preference(std::vector<Action> order) {
  std::vector<Action> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].index != i) {
      throw DomainError("fixed tie-break preference must list each action exactly once");
    }
  }
  if (sorted.empty()) throw DomainError("fixed tie-break preference is empty");
  return TieBreak(Rule::fixed_preference, std::move(order));
}

Action TieBreak::choose(const std::vector<Action>& ties) const {
  if (ties.empty()) throw DomainError("tie-break over an empty set");
  switch (rule_) {
    case Rule::lowest_index: return *std::min_element(ties.begin(), ties.end());
    case Rule::highest_index: return *std::max_element(ties.begin(), ties.end());
    case Rule::fixed_preference:
      for (const auto& a : order_) {
        if (std::find(ties.begin(), ties.end(), a) != ties.end()) return a;
      }
      throw DomainError("tie-break preference does not cover the tied actions");
  }
  return ties.front();
}

std::string TieBreak::describe() const {
  switch (rule_) {
    case Rule::lowest_index: return "lowest_index";
    case Rule::highest_index: return "highest_index";
    case Rule::fixed_preference: {
      std::string s = "fixed_preference(";
      for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(order_[i].index);
      }
      return s + ")";
    }
  }
  return "unknown";
}

// --- Planner --------------------------------------------------------------

Planner::Planner(EnvPtr env, DiscountSchedule schedule, Backup backup, Tail tail)
    : env_(std::move(env)), schedule_(std::move(schedule)), backup_(backup), tail_(tail) {
  if (!env_) throw DomainError("planner needs an environment");
}

std::size_t Planner::cap_depth(const History& h, std::size_t horizon) const {
  return capped_depth(schedule_, h, horizon);
}

Planner::Node Planner::node(const History& h, std::size_t depth) const {
  const Rational big_gamma = schedule_.big_gamma(h.size() + 1);
  if (big_gamma == 0) return {Rational(0), false};
  if (tail_ == Tail::absorb) {
    if (auto r = env_->absorbing_reward(h)) return {*r * big_gamma, false};
  }
  if (depth == 0) return {Rational(0), true};

  const auto key = std::make_pair(h, depth);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  Node best;
  bool first = true;
  for (std::size_t a = 0; a < env_->alphabet().num_actions(); ++a) {
    Node q = action_node(h, Action{a}, depth);
    best.truncated = best.truncated || q.truncated;
    const bool better = backup_ == Backup::max ? q.total > best.total : q.total < best.total;
    if (first || better) best.total = q.total;
    first = false;
  }
  std::lock_guard lock(mutex_);
  memo_.emplace(key, best);
  return best;
}

Planner::Node Planner::action_node(const History& h, Action a, std::size_t depth) const {
  const std::size_t t = h.size() + 1;
  const Rational gamma_t = schedule_.gamma(t);
  const Distribution dist = env_->step(h, a);
  Node out{Rational(0), false};
  History child = h;
  for (PerceptId e = 0; e < dist.size(); ++e) {
    if (dist[e] == 0) continue;
    child.push_back({a, e});
    Node sub = node(child, depth - 1);
    child.pop_back();
    out.total += dist[e] * (gamma_t * env_->alphabet().reward(e) + sub.total);
    out.truncated = out.truncated || sub.truncated;
  }
  return out;
}

ValueResult Planner::best_value(const History& h, std::size_t horizon) const {
  require_positive(*env_, h);
  const std::size_t depth = cap_depth(h, horizon);
  const Node n = node(h, depth);
  return {normalized(n.total, schedule_.big_gamma(h.size() + 1)), depth,
          tail_bound(schedule_, h, depth, n.truncated)};
}

ActionChoice Planner::choose(const History& h, std::size_t horizon, const TieBreak& tb) const {
  require_positive(*env_, h);
  const std::size_t depth = cap_depth(h, horizon);
  const Rational big_gamma = schedule_.big_gamma(h.size() + 1);
  const std::size_t n = env_->alphabet().num_actions();

  ActionChoice out;
  out.action_values.assign(n, Rational(0));
  bool truncated = big_gamma > 0 && depth == 0;
  if (big_gamma > 0 && depth > 0) {
    for (std::size_t a = 0; a < n; ++a) {
      Node q = action_node(h, Action{a}, depth);
      truncated = truncated || q.truncated;
      out.action_values[a] = q.total / big_gamma;
    }
  }
  const auto& values = out.action_values;
  const Rational best = backup_ == Backup::max ? *std::max_element(values.begin(), values.end())
                                               : *std::min_element(values.begin(), values.end());
  std::optional<Rational> runner_up;
  for (std::size_t a = 0; a < n; ++a) {
    if (values[a] == best) {
      out.tie_set.push_back(Action{a});
    } else {
      const Rational diff = abs(best - values[a]);
      if (!runner_up || diff < *runner_up) runner_up = diff;
    }
  }
  out.gap = runner_up.value_or(Rational(0));
  out.action = tb.choose(out.tie_set);
  out.truncation_bound = tail_bound(schedule_, h, depth, truncated);
  return out;
}

// --- free functions -------------------------------------------------------

ValueResult value(const Policy& pi, const Environment& env, const History& h,
                  const DiscountSchedule& schedule, std::size_t horizon, Tail tail) {
  require_positive(env, h);
  const std::size_t depth = capped_depth(schedule, h, horizon);
  PolicyWalk walk{pi, env, schedule, tail};
  History work = h;
  const Rational total = walk.node(work, depth);
  return {normalized(total, schedule.big_gamma(h.size() + 1)), depth,
          tail_bound(schedule, h, depth, walk.truncated)};
}

ValueResult action_value(const Policy& pi, const Environment& env, const History& h, Action a,
                         const DiscountSchedule& schedule, std::size_t horizon, Tail tail) {
  require_positive(env, h);
  const std::size_t depth = capped_depth(schedule, h, horizon);
  const Rational big_gamma = schedule.big_gamma(h.size() + 1);
  if (big_gamma == 0 || depth == 0) {
    return {Rational(0), depth, tail_bound(schedule, h, depth, big_gamma > 0)};
  }
  PolicyWalk walk{pi, env, schedule, tail};
  History work = h;
  const Rational total = walk.action_node(work, a, depth);
  return {normalized(total, big_gamma), depth, tail_bound(schedule, h, depth, walk.truncated)};
}

ValueResult optimal_value(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                          std::size_t horizon, Tail tail) {
  return Planner(env, schedule, Planner::Backup::max, tail).best_value(h, horizon);
}

ValueResult pessimal_value(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                           std::size_t horizon, Tail tail) {
  return Planner(env, schedule, Planner::Backup::min, tail).best_value(h, horizon);
}

ActionChoice optimal_action(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                            std::size_t horizon, const TieBreak& tb, Tail tail) {
  return Planner(env, schedule, Planner::Backup::max, tail).choose(h, horizon, tb);
}

ActionChoice pessimal_action(const EnvPtr& env, const History& h, const DiscountSchedule& schedule,
                             std::size_t horizon, const TieBreak& tb, Tail tail) {
  return Planner(env, schedule, Planner::Backup::min, tail).choose(h, horizon, tb);
}

namespace {

Policy derived_policy(const EnvPtr& env, const DiscountSchedule& schedule, std::size_t horizon,
                      const TieBreak& tb, Planner::Backup backup) {
  struct Decisions {
    std::mutex mutex;
    std::map<History, Action> cache;
  };
  auto planner = std::make_shared<const Planner>(env, schedule, backup);
  auto decisions = std::make_shared<Decisions>();
  const std::string name = std::string(backup == Planner::Backup::max ? "optimal" : "pessimal") +
                           "(" + env->name() + ", H=" + std::to_string(horizon) + ", " +
                           tb.describe() + ")";
  return Policy(Policy::Kind::derived_optimal, name,
                [planner, decisions, horizon, tb](const History& h) {
                  {
                    std::lock_guard lock(decisions->mutex);
                    if (auto it = decisions->cache.find(h); it != decisions->cache.end()) {
                      return it->second;
                    }
                  }
                  Action chosen;
                  if (joint_prob(planner->env(), h) == 0) {
                    chosen = tb.choose(all_actions(planner->env().alphabet()));
                  } else {
                    chosen = planner->choose(h, horizon, tb).action;
                  }
                  std::lock_guard lock(decisions->mutex);
                  decisions->cache.emplace(h, chosen);
                  return chosen;
                });
}

}  // namespace

Policy optimal_policy(const EnvPtr& env, const DiscountSchedule& schedule, std::size_t horizon,
                      const TieBreak& tb) {
  return derived_policy(env, schedule, horizon, tb, Planner::Backup::max);
}

Policy pessimal_policy(const EnvPtr& env, const DiscountSchedule& schedule, std::size_t horizon,
                       const TieBreak& tb) {
  return derived_policy(env, schedule, horizon, tb, Planner::Backup::min);
}

}  // namespace aixilab
