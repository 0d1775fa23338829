#include "aixilab/pareto.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "aixilab/parallel.hpp"

namespace aixilab {

namespace {

constexpr std::size_t kMaxSpace = std::size_t{1} << 24;

// Depth up to which the schedule still pays anything: histories of length
// >= reach have Gamma_{|h|+1} = 0.
std::size_t reach(const DiscountSchedule& schedule, std::size_t depth) {
  const auto life = schedule.lifetime();
  return life ? std::min(depth, *life) : depth;
}

}  // namespace

PolicySpace::PolicySpace(Alphabet alphabet, std::size_t depth, Action fallback)
    : alphabet_(std::move(alphabet)), depth_(depth), fallback_(fallback) {
  alphabet_.action(fallback_.index);
  for (std::size_t len = 0; len < depth_; ++len) {
    auto level = all_histories(alphabet_, len);
    histories_.insert(histories_.end(), level.begin(), level.end());
    if (histories_.size() > 64) throw DomainError("policy space too large");
  }
  const std::size_t n = alphabet_.num_actions();
  for (std::size_t i = 0; i < histories_.size(); ++i) {
    if (size_ > kMaxSpace / n) throw DomainError("policy space too large");
    size_ *= n;
  }
}

std::vector<Action> PolicySpace::table(std::size_t index) const {
  if (index >= size_) throw DomainError("policy index out of range");
  const std::size_t n = alphabet_.num_actions();
  std::vector<Action> out(histories_.size());
  for (std::size_t j = histories_.size(); j-- > 0;) {
    out[j] = Action{index % n};
    index /= n;
  }
  return out;
}

Policy PolicySpace::policy(std::size_t index) const {
  const auto actions = table(index);
  std::map<History, Action> t;
  for (std::size_t j = 0; j < histories_.size(); ++j) t.emplace(histories_[j], actions[j]);
  return Policy::tabular(std::move(t), fallback_, "space[" + std::to_string(index) + "]");
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::dominates: return "dominates";
    case Dominance::does_not_dominate: return "does_not_dominate";
    case Dominance::uncertifiable: return "uncertifiable";
  }
  return "?";
}

Dominance dominance(const std::vector<Interval>& challenger, const std::vector<Interval>& incumbent) {
  if (challenger.size() != incumbent.size()) throw DomainError("dominance: mismatched value vectors");
  bool all_ge = true;
  bool some_gt = false;
  bool gt_open = false;
  for (std::size_t e = 0; e < challenger.size(); ++e) {
    const Outcome ge = certify_less_equal(incumbent[e], challenger[e]);
    if (ge == Outcome::falsified) return Dominance::does_not_dominate;
    if (!holds(ge)) all_ge = false;
    const Outcome gt = certify_less(incumbent[e], challenger[e]);
    if (holds(gt)) some_gt = true;
    else if (gt == Outcome::uncertifiable) gt_open = true;
  }
  if (all_ge && some_gt) return Dominance::dominates;
  if (all_ge && !gt_open) return Dominance::does_not_dominate;
  return Dominance::uncertifiable;
}

Dominance dominates(const Policy& pi_tilde, const Policy& pi, const std::vector<EnvPtr>& envs,
                    const DiscountSchedule& schedule, std::size_t horizon) {
  std::vector<Interval> a;
  std::vector<Interval> b;
  for (const auto& env : envs) {
    a.push_back(Interval::of(value(pi_tilde, *env, History{}, schedule, horizon)));
    b.push_back(Interval::of(value(pi, *env, History{}, schedule, horizon)));
  }
  return dominance(a, b);
}

SeparatingHistory find_separating_history(const Policy& pi, const Policy& pi_tilde,
                                          const Environment& rho, const DiscountSchedule& schedule,
                                          std::size_t horizon) {
  if (joint_prob(rho, History{}) == 0) throw NoSeparatingHistory("environment has no mass");
  std::deque<History> queue{History{}};
  while (!queue.empty()) {
    History h = std::move(queue.front());
    queue.pop_front();
    const Action a = pi(h);
    const Action b = pi_tilde(h);
    if (a != b) {
      const ValueResult v = value(pi, rho, h, schedule, horizon);
      const ValueResult w = value(pi_tilde, rho, h, schedule, horizon);
      if (holds(certify_less(Interval::of(v), Interval::of(w)))) return {h, h.size() + 1, a, b};
      continue;
    }
    if (h.size() + 1 >= horizon) continue;
    const Distribution d = rho.step(h, a);
    for (PerceptId e = 0; e < d.size(); ++e) {
      if (d[e] > 0) queue.push_back(h.extended(a, e));
    }
  }
  throw NoSeparatingHistory("no history separates '" + pi.name() + "' from '" + pi_tilde.name() + "'");
}

std::optional<History> first_disagreement(const Policy& pi, const Policy& pi_tilde,
                                          const Alphabet& alphabet, std::size_t depth) {
  std::deque<History> queue;
  if (depth > 0) queue.push_back(History{});
  while (!queue.empty()) {
    History h = std::move(queue.front());
    queue.pop_front();
    const Action a = pi(h);
    if (a != pi_tilde(h)) return h;
    if (h.size() + 1 >= depth) continue;
    for (PerceptId e = 0; e < alphabet.num_percepts(); ++e) queue.push_back(h.extended(a, e));
  }
  return std::nullopt;
}

BuddyGap verify_buddy_gap(const Policy& pi, const Policy& pi_tilde, const SeparatingHistory& sep,
                          const Alphabet& alphabet, const DiscountSchedule& schedule) {
  BuddyGap out;
  out.buddy = make_buddy_env(alphabet, sep.history, sep.pi_action);
  // The buddy is absorbing from step k on, so k steps of search are exact.
  const std::size_t horizon = sep.k + 1;
  const ValueResult v = value(pi, *out.buddy, History{}, schedule, horizon);
  const ValueResult w = value(pi_tilde, *out.buddy, History{}, schedule, horizon);
  out.gap = schedule.big_gamma(1) * (v.value - w.value);
  out.expected = schedule.big_gamma(sep.k);
  out.matches = v.truncation_bound == 0 && w.truncation_bound == 0 && out.gap == out.expected;
  return out;
}

std::vector<BuddyGapCase> buddy_gap_sweep(const PolicySpace& space, const DiscountSchedule& schedule,
                                          std::size_t jobs) {
  const std::size_t n = space.size();
  const std::size_t depth = reach(schedule, space.depth());
  std::vector<Policy> policies;
  policies.reserve(n);
  for (std::size_t i = 0; i < n; ++i) policies.push_back(space.policy(i));

  std::vector<std::vector<BuddyGapCase>> rows(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto d = first_disagreement(policies[i], policies[j], space.alphabet(), depth);
      if (!d) continue;
      const auto rho = make_buddy_env(space.alphabet(), *d, policies[j](*d));
      BuddyGapCase c;
      c.pi = i;
      c.pi_tilde = j;
      c.sep = find_separating_history(policies[i], policies[j], *rho, schedule, d->size() + 2);
      c.result = verify_buddy_gap(policies[i], policies[j], c.sep, space.alphabet(), schedule);
      rows[i].push_back(std::move(c));
    }
  });
  std::vector<BuddyGapCase> out;
  for (auto& r : rows) {
    for (auto& c : r) out.push_back(std::move(c));
  }
  return out;
}

ParetoReport verify_pareto_triviality(const std::vector<EnvPtr>& envs, const PolicySpace& space,
                                      const DiscountSchedule& schedule, bool add_buddies,
                                      std::size_t jobs) {
  const auto life = schedule.lifetime();
  if (!life) throw DomainError("pareto verification needs a finite-lifetime schedule");
  if (envs.empty()) throw DomainError("pareto verification needs a non-empty class");
  for (const auto& env : envs) {
    if (!(env->alphabet() == space.alphabet())) throw DomainError("environment alphabet mismatch");
  }
  const std::size_t horizon = *life;
  const std::size_t n = space.size();

  ParetoReport out;
  out.envs = envs;
  out.base_size = envs.size();
  out.values.assign(n, {});
  std::vector<Policy> policies;
  policies.reserve(n);
  for (std::size_t i = 0; i < n; ++i) policies.push_back(space.policy(i));
  std::set<std::pair<History, std::size_t>> buddies;

  constexpr std::size_t kMaxRounds = 64;
  while (true) {
    ++out.rounds;
    const std::size_t known = out.values[0].size();
    parallel_for(n, jobs, [&](std::size_t p) {
      for (std::size_t e = known; e < out.envs.size(); ++e) {
        const ValueResult v = value(policies[p], *out.envs[e], History{}, schedule, horizon);
        if (v.truncation_bound != 0) throw DomainError("pareto verification: inexact value");
        out.values[p].push_back(v.value);
      }
    });

    out.matrix.assign(n, std::vector<Dominance>(n, Dominance::does_not_dominate));
    parallel_for(n, jobs, [&](std::size_t a) {
      std::vector<Interval> va;
      for (const auto& v : out.values[a]) va.push_back(Interval::point(v));
      for (std::size_t d = 0; d < n; ++d) {
        if (a == d) continue;
        std::vector<Interval> vd;
        for (const auto& v : out.values[d]) vd.push_back(Interval::point(v));
        out.matrix[a][d] = dominance(va, vd);
      }
    });

    out.pareto_optimal.assign(n, true);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t d = 0; d < n; ++d) {
        if (out.matrix[a][d] != Dominance::does_not_dominate) out.pareto_optimal[d] = false;
      }
    }
    out.all_pareto_optimal =
        std::all_of(out.pareto_optimal.begin(), out.pareto_optimal.end(), [](bool b) { return b; });
    if (out.all_pareto_optimal || !add_buddies) break;
    if (out.rounds >= kMaxRounds) throw DomainError("pareto verification did not converge");

    // Defend every dominated policy against its lowest-index attacker.
    bool grew = false;
    for (std::size_t d = 0; d < n; ++d) {
      std::size_t a = 0;
      while (a < n && out.matrix[a][d] != Dominance::dominates) ++a;
      if (a == n) continue;
      std::size_t witness = 0;
      while (!(out.values[d][witness] < out.values[a][witness])) ++witness;
      Defense def;
      def.defended = d;
      def.attacker = a;
      def.witness = witness;
      def.sep = find_separating_history(policies[d], policies[a], *out.envs[witness], schedule, horizon);
      def.gap = verify_buddy_gap(policies[d], policies[a], def.sep, space.alphabet(), schedule);
      const auto key = std::make_pair(def.sep.history, def.sep.pi_action.index);
      if (buddies.insert(key).second) {
        out.envs.push_back(def.gap.buddy);
        grew = true;
      }
      for (std::size_t e = out.base_size; e < out.envs.size(); ++e) {
        const auto* b = dynamic_cast<const BuddyEnvironment*>(out.envs[e].get());
        if (b && b->script() == def.sep.history && b->pinned() == def.sep.pi_action) def.buddy = e;
      }
      out.defenses.push_back(std::move(def));
    }
    if (!grew) throw DomainError("pareto verification: defenses added no new environment");
  }
  return out;
}

}  // namespace aixilab
