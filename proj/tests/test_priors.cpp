#include <doctest.h>

#include "aixilab/intelligence.hpp"
#include "aixilab/priors.hpp"
#include "aixilab/zoo.hpp"
#include "support.hpp"

using namespace aixilab;

namespace {

const Alphabet kBin = Alphabet::binary();
const TieBreak kLow = TieBreak::lowest_index();

std::vector<History> reachable(const Environment& env, std::size_t depth) {
  std::vector<History> out;
  for (std::size_t len = 0; len < depth; ++len) {
    for (const auto& h : all_histories(env.alphabet(), len)) {
      if (joint_prob(env, h) > 0) out.push_back(h);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("indifference mixture: conditionals ignore the actions up to m") {
  const std::size_t m = 3;
  const MixturePtr xi = support::standard_class();
  const MixturePtr prior = make_indifference_mixture(xi, m);
  CHECK(prior->components().size() == 8 * 3);
  CHECK(prior->total_weight() == xi->total_weight());
  for (const auto& h : reachable(*prior, m)) {
    CHECK(prior->step(h, Action{0}) == prior->step(h, Action{1}));
  }
  const auto s = DiscountSchedule::finite_lifetime(m);
  for (const auto& h : reachable(*prior, m)) {
    CHECK(optimal_action(prior, h, s, m, kLow).tie_set.size() == 2);
  }
}

TEST_CASE("indifference mixture of an action-independent environment is that environment") {
  const Alphabet coins(2, {{0, Rational(0)}, {1, Rational(0)}});
  const EnvPtr coin = make_coin_env(coins, Rational(1, 3));
  const auto xi = make_mixture(coins, {{Rational(1), coin}});
  const MixturePtr prior = make_indifference_mixture(xi, 2);
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& h : all_histories(coins, len)) {
      CHECK(joint_prob(*prior, h) == joint_prob(*coin, h));
      if (joint_prob(*prior, h) > 0) CHECK(prior->step(h, Action{1}) == coin->step(h, Action{1}));
    }
  }
}

TEST_CASE("indifference masking uses the cyclic group on three actions") {
  const Alphabet a(3, {{0, Rational(0)}, {0, Rational(1)}});
  const auto xi = make_mixture(a, {{Rational(1), make_gate_env(a, Action{2})}});
  const MixturePtr prior = make_indifference_mixture(xi, 1);
  CHECK(prior->step(History{}, Action{0}) == Distribution{Rational(2, 3), Rational(1, 3)});
  CHECK(prior->step(History{}, Action{1}) == prior->step(History{}, Action{2}));
  const MaskedEnvironment masked(make_gate_env(a, Action{2}), {Action{2}});
  CHECK(masked.masked(Action{2}, 1) == Action{1});
  CHECK(masked.masked(Action{2}, 2) == Action{2});
  CHECK_THROWS_AS(make_indifference_mixture(xi, 0), DomainError);
}

TEST_CASE("dogmatic mixture: pi is the unique optimal action where it is worth more than eps") {
  const MixturePtr xi = support::standard_class();
  const Policy pi = Policy::constant(Action{1});
  const Rational eps(1, 10);
  const auto s = DiscountSchedule::finite_lifetime(4);
  const MixturePtr prior = make_dogmatic_mixture(pi, xi, eps);
  CHECK(prior->components()[0].weight == Rational(1, 2));

  std::size_t checked = 0;
  for (const auto& h : on_policy_histories(pi, *xi, 4)) {
    const ValueResult v = value(pi, *xi, h, s, 4);
    // On-policy value is preserved exactly.
    CHECK(value(pi, *prior, h, s, 4).value == v.value);
    CHECK(posterior(*prior, h).weights[0] / Rational(1, 2) == 2 / (1 + eps));
    if (v.value <= eps) continue;
    const ActionChoice c = optimal_action(prior, h, s, 4, kLow);
    CHECK(c.tie_set == std::vector<Action>{Action{1}});
    CHECK(c.action_values[0] <= eps / (1 + eps));
    ++checked;
  }
  CHECK(checked == 15);
  CHECK_THROWS_AS(make_dogmatic_mixture(pi, xi, Rational(0)), DomainError);
}

TEST_CASE("emulation mixture") {
  const MixturePtr xi = support::standard_class();
  const Policy pi = Policy::constant(Action{0});
  const auto s = DiscountSchedule::finite_lifetime(3);
  const EmulationMixture em = make_emulation_mixture(pi, xi, Rational(1, 5), s, 3);
  CHECK(em.k == 3);
  CHECK(em.eps_prime * 2 == em.min_on_policy_value);
  CHECK(em.histories_checked == 7);

  const Policy star = optimal_policy(em.mixture, s, 3, kLow);
  for (const auto& h : on_policy_histories(pi, *xi, 3)) CHECK(star(h) == pi(h));
  const EnvPtr heaven = make_heaven(kBin);
  CHECK(value(star, *heaven, History{}, s, 3).value == value(pi, *heaven, History{}, s, 3).value);

  // Geometric: the emulator follows pi for k steps.
  const auto g = DiscountSchedule::geometric(Rational(1, 2));
  const EmulationMixture eg = make_emulation_mixture(pi, xi, Rational(1, 8), g, 6);
  CHECK(eg.k == 4);
  const Policy sg = optimal_policy(eg.mixture, g, 6, kLow);
  for (const auto& h : on_policy_histories(pi, *xi, eg.k)) CHECK(sg(h) == pi(h));

  // A policy worth nothing somewhere on its own path has no threshold.
  const auto hell_only = make_mixture(kBin, {{Rational(1), make_hell(kBin)}});
  CHECK_THROWS_AS(make_emulation_mixture(pi, hell_only, Rational(1, 5), s, 3), DomainError);
}

TEST_CASE("adversarial gate mixture") {
  const MixturePtr xi = support::standard_class();
  const auto s = DiscountSchedule::finite_lifetime(3);
  const Rational eps(1, 1000);
  const MixturePtr rigged = make_adversarial_gate_mixture(Action{0}, xi, eps);
  CHECK(rigged->components()[0].weight == 1 - eps);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Policy p = support::random_policy(rng, kBin, 3);
    const Rational v = upsilon(*rigged, p, s, 3).value;
    if (p(History{}) == Action{0}) {
      CHECK(v <= eps);
    } else {
      CHECK(v >= 1 - eps);
    }
  }
  CHECK_THROWS_AS(make_adversarial_gate_mixture(Action{0}, xi, Rational(1)), DomainError);
}
