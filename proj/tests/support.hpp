#pragma once

// Test-only oracles. They recompute values straight from the definition
// (discounted reward sums weighted by joint probabilities) without the
// planner's recursion, memo or absorbing shortcuts.

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "aixilab/mixture.hpp"
#include "aixilab/planner.hpp"
#include "aixilab/zoo.hpp"

namespace support {

using namespace aixilab;

/// All percept sequences of length n (as id vectors), canonical order.
inline std::vector<std::vector<PerceptId>> percept_sequences(std::size_t num_percepts, std::size_t n) {
  std::vector<std::vector<PerceptId>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<PerceptId>> next;
    for (const auto& s : out) {
      for (PerceptId e = 0; e < num_percepts; ++e) {
        next.push_back(s);
        next.back().push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// V^pi_nu(h) over `horizon` steps, by explicit summation:
/// sum_{t} gamma_t sum_{h_t} nu(h_t) r_t / (Gamma_{|h|+1} nu(h)).
inline Rational oracle_value(const Policy& pi, const Environment& env, const History& h,
                             const DiscountSchedule& s, std::size_t horizon) {
  const std::size_t t0 = h.size() + 1;
  const Rational norm = s.big_gamma(t0) * joint_prob(env, h);
  if (norm == 0) return 0;
  Rational total = 0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const Rational g = s.gamma(t0 + n - 1);
    if (g == 0) continue;
    for (const auto& seq : percept_sequences(env.alphabet().num_percepts(), n)) {
      History x = h;
      for (PerceptId e : seq) x.push_back({pi(x), e});
      total += g * joint_prob(env, x) * env.alphabet().reward(seq.back());
    }
  }
  return total / norm;
}

using Table = std::map<History, Action>;

/// Every deterministic behaviour below `h` for `depth` steps: one table per
/// policy tree (a choice of action at each node the policy itself reaches).
inline std::vector<Table> policy_trees(const Alphabet& alphabet, const History& h, std::size_t depth) {
  if (depth == 0) return {Table{}};
  std::vector<Table> out;
  for (std::size_t a = 0; a < alphabet.num_actions(); ++a) {
    std::vector<Table> partial{Table{{h, Action{a}}}};
    for (PerceptId e = 0; e < alphabet.num_percepts(); ++e) {
      const auto subs = policy_trees(alphabet, h.extended(Action{a}, e), depth - 1);
      std::vector<Table> next;
      for (const auto& p : partial) {
        for (const auto& s : subs) {
          Table t = p;
          t.insert(s.begin(), s.end());
          next.push_back(std::move(t));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

/// Number of policy trees without building them.
inline double policy_tree_count(std::size_t actions, std::size_t percepts, std::size_t depth) {
  double t = 1;
  for (std::size_t d = 0; d < depth; ++d) t = actions * std::pow(t, static_cast<double>(percepts));
  return t;
}

inline Rational oracle_optimal(const Environment& env, const DiscountSchedule& s, std::size_t horizon,
                               bool maximize = true) {
  std::optional<Rational> best;
  for (auto& t : policy_trees(env.alphabet(), History{}, horizon)) {
    const Rational v = oracle_value(Policy::tabular(std::move(t), Action{0}), env, History{}, s, horizon);
    if (!best || (maximize ? v > *best : v < *best)) best = v;
  }
  return *best;
}

inline Rational small_rational(std::mt19937_64& rng) {
  static const Rational pool[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                  Rational(2, 3), Rational(3, 4), Rational(1)};
  return pool[rng() % 7];
}

/// |A| in [2, max_actions], |E| in [2, max_percepts], distinct observations,
/// rewards from a small grid.
inline Alphabet random_alphabet(std::mt19937_64& rng, std::size_t max_actions, std::size_t max_percepts) {
  const std::size_t a = 2 + rng() % (max_actions - 1);
  const std::size_t e = 2 + rng() % (max_percepts - 1);
  std::vector<Percept> percepts;
  for (std::size_t i = 0; i < e; ++i) percepts.push_back({i, small_rational(rng)});
  return Alphabet(a, std::move(percepts));
}

inline DiscountSchedule random_schedule(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return DiscountSchedule::geometric(Rational(1 + rng() % 4, 5));
    case 1: return DiscountSchedule::finite_lifetime(1 + rng() % 4);
    default: {
      std::vector<Rational> w;
      const std::size_t n = 1 + rng() % 4;
      for (std::size_t i = 0; i < n; ++i) w.push_back(small_rational(rng));
      w[0] = Rational(1 + rng() % 3, 3);  // Gamma_1 > 0
      return DiscountSchedule::table(std::move(w));
    }
  }
}

inline Policy random_policy(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t depth) {
  Table t;
  for (std::size_t len = 0; len < depth; ++len) {
    for (auto& h : all_histories(alphabet, len)) t.emplace(std::move(h), Action{rng() % alphabet.num_actions()});
  }
  return Policy::tabular(std::move(t), Action{rng() % alphabet.num_actions()});
}

/// A fixed arbitrary action per history, without building a table.
inline Policy hashed_policy(std::uint64_t seed, const Alphabet& alphabet) {
  const std::size_t n = alphabet.num_actions();
  return Policy::programmatic("hashed", [seed, n](const History& h) {
    return Action{(std::hash<std::string>{}(h.str()) ^ seed) % n};
  });
}

/// Positive-probability history of the given length for env, following
/// random actions.
inline std::optional<History> random_history(std::mt19937_64& rng, const Environment& env, std::size_t length) {
  History h;
  for (std::size_t i = 0; i < length; ++i) {
    const Action a{rng() % env.alphabet().num_actions()};
    const Distribution d = env.step(h, a);
    std::vector<PerceptId> live;
    for (PerceptId e = 0; e < d.size(); ++e) {
      if (d[e] > 0) live.push_back(e);
    }
    if (live.empty()) return std::nullopt;
    h.push_back({a, live[rng() % live.size()]});
  }
  return h;
}

inline const MixturePtr& standard_class() {
  static const MixturePtr xi = [] {
    const Alphabet b = Alphabet::binary();
    return make_mixture(b, {{Rational(1, 2), make_bernoulli_bandit(b, {Rational(3, 4), Rational(1, 4)})},
                            {Rational(1, 4), make_heaven(b)},
                            {Rational(1, 4), make_hell(b)}},
                        "standard");
  }();
  return xi;
}

/// Two policies that agree on every history shorter than k differ in value
/// by at most Gamma_{k+1} / Gamma_1. One random instance; true if it holds.
inline bool agreement_bound_case(std::mt19937_64& rng) {
  const Alphabet a = random_alphabet(rng, 3, 3);
  const DiscountSchedule s = random_schedule(rng);
  const EnvPtr env = make_random_env(a, rng(), rng() % 2);
  const std::size_t horizon = 1 + rng() % 3;
  const std::size_t k = rng() % (horizon + 1);
  const Policy p1 = random_policy(rng, a, horizon);
  Table t;
  for (std::size_t len = 0; len < horizon; ++len) {
    for (auto& h : all_histories(a, len)) {
      const Action act = len < k ? p1(h) : Action{rng() % a.num_actions()};
      t.emplace(std::move(h), act);
    }
  }
  const Policy p2 = Policy::tabular(std::move(t), Action{0});
  const Rational v1 = value(p1, *env, History{}, s, horizon, Tail::truncate).value;
  const Rational v2 = value(p2, *env, History{}, s, horizon, Tail::truncate).value;
  return abs(v1 - v2) <= s.big_gamma(k + 1) / s.big_gamma(1);
}

/// Value is linear in the environment: for nu = q rho + q' rho',
/// V_nu(h) = q rho(h)/nu(h) V_rho(h) + q' rho'(h)/nu(h) V_rho'(h).
inline bool linearity_case(std::mt19937_64& rng) {
  const Alphabet a = random_alphabet(rng, 3, 3);
  const DiscountSchedule s = random_schedule(rng);
  const EnvPtr rho = make_random_env(a, rng(), rng() % 2);
  const EnvPtr rho2 = make_random_env(a, rng(), rng() % 2);
  const Rational q(1 + rng() % 4, 5);
  const Rational q2 = (1 - q) * Rational(1 + rng() % 4, 4);
  const auto nu = make_mixture(a, {{q, rho}, {q2, rho2}});
  const std::size_t horizon = 1 + rng() % 3;
  const Policy pi = hashed_policy(rng(), a);
  std::optional<History> h = random_history(rng, *nu, rng() % 3);
  if (!h || s.big_gamma(h->size() + 1) == 0) h = History{};
  const Rational n = joint_prob(*nu, *h);
  if (n == 0) return true;  // vacuous
  const auto part = [&](const Rational& w, const EnvPtr& e) -> Rational {
    const Rational p = joint_prob(*e, *h);
    if (p == 0) return 0;
    return w * p / n * value(pi, *e, *h, s, horizon, Tail::truncate).value;
  };
  return value(pi, *nu, *h, s, horizon, Tail::truncate).value == part(q, rho) + part(q2, rho2);
}

/// optimal_value agrees with the maximum over every policy tree.
inline bool oracle_case(std::mt19937_64& rng) {
  Alphabet a = random_alphabet(rng, 3, 3);
  std::size_t horizon = 1 + rng() % 3;
  while (horizon > 1 && policy_tree_count(a.num_actions(), a.num_percepts(), horizon) > 1e4) --horizon;
  const DiscountSchedule s = random_schedule(rng);
  const EnvPtr env = make_random_env(a, rng(), rng() % 2);
  return optimal_value(env, History{}, s, horizon, Tail::truncate).value == oracle_optimal(*env, s, horizon);
}

}  // namespace support
