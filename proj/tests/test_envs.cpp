#include <doctest.h>

#include <random>

#include "aixilab/mixture.hpp"
#include "aixilab/planner.hpp"
#include "aixilab/zoo.hpp"
#include "support.hpp"

using namespace aixilab;

namespace {

const Alphabet kBin = Alphabet::binary();
const PerceptId kZero = 0;  // (0, 0)
const PerceptId kOne = 1;   // (0, 1)

Alphabet bits_alphabet() {
  return Alphabet(2, {{0, Rational(0)}, {0, Rational(1)}, {1, Rational(0)}, {1, Rational(1)}});
}

}  // namespace

TEST_CASE("heaven and hell steps") {
  const History h = History{}.extended(Action{0}, kOne);
  CHECK(make_heaven(kBin)->step(h, Action{1}) == Distribution{Rational(0), Rational(1)});
  CHECK(make_hell(kBin)->step(h, Action{0}) == Distribution{Rational(1), Rational(0)});
  CHECK_THROWS_AS(make_heaven(Alphabet(2, {{0, Rational(0)}})), DomainError);
}

TEST_CASE("joint_prob examples") {
  CHECK(joint_prob(*make_bernoulli_bandit(kBin, {Rational(1, 3), Rational(1)}), History{}) == 1);
  CHECK(joint_prob(*make_heaven(kBin), History{}.extended(Action{0}, kOne)) == 1);
  const Alphabet coins(2, {{0, Rational(0)}, {1, Rational(0)}});
  const EnvPtr fair = make_coin_env(coins, Rational(1, 2));
  CHECK(joint_prob(*fair, History{}.extended(Action{0}, 1).extended(Action{1}, 0)) == Rational(1, 4));
}

TEST_CASE("gate sends the first action to heaven or hell") {
  const EnvPtr gate = make_gate_env(kBin, Action{1});
  const History lucky = History{}.extended(Action{1}, kOne);
  const History unlucky = History{}.extended(Action{0}, kZero);
  CHECK(gate->step(History{}, Action{1})[kOne] == 1);
  CHECK(gate->step(History{}, Action{0})[kZero] == 1);
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(gate->step(lucky, Action{a})[kOne] == 1);
    CHECK(gate->step(unlucky, Action{a})[kZero] == 1);
  }
  CHECK(gate->absorbing_reward(lucky) == Rational(1));
  CHECK(gate->absorbing_reward(unlucky) == Rational(0));
  CHECK_FALSE(gate->absorbing_reward(History{}));

  // Two-branch hand computation: (gamma_1 r_1 + Gamma_2) / Gamma_1.
  const auto s = DiscountSchedule::geometric(Rational(1, 3));
  const Rational lucky_value = (s.gamma(1) * 1 + s.big_gamma(2)) / s.big_gamma(1);
  CHECK(value(Policy::constant(Action{1}), *gate, History{}, s, 5).value == lucky_value);
  CHECK(value(Policy::constant(Action{0}), *gate, History{}, s, 5).value == 0);

  const EnvPtr trap = make_trapdoor_env(kBin, Action{1});
  CHECK(trap->step(History{}, Action{1})[kZero] == 1);
  CHECK(trap->step(History{}, Action{0})[kOne] == 1);
}

TEST_CASE("dogmatic environment mirrors the base on policy and freezes after deviating") {
  const MixturePtr xi = support::standard_class();
  const Policy pi = Policy::constant(Action{1});
  const auto nu = make_dogmatic_env(pi, xi);

  // On-policy agreement, exhaustive to depth 4.
  std::vector<History> level{History{}};
  for (std::size_t d = 0; d < 4; ++d) {
    std::vector<History> next;
    for (const auto& h : level) {
      CHECK(joint_prob(*nu, h) == joint_prob(*xi, h));
      for (PerceptId e = 0; e < 2; ++e) next.push_back(h.extended(Action{1}, e));
    }
    level = std::move(next);
  }

  const History dev0 = History{}.extended(Action{0}, kZero);
  const History dev1 = History{}.extended(Action{0}, kOne);
  CHECK(joint_prob(*nu, dev0) == joint_prob(*xi, History{}));
  CHECK(joint_prob(*nu, dev1) == 0);
  CHECK(nu->step(dev0, Action{1}) == Distribution{Rational(1), Rational(0)});
  CHECK(nu->first_deviation(dev0.extended(Action{1}, kZero)) == std::size_t{0});
  CHECK(nu->absorbing_reward(dev0) == Rational(0));
  CHECK_FALSE(nu->absorbing_reward(History{}.extended(Action{1}, kOne)));
}

TEST_CASE("buddy environment replays its script and rewards the pinned action") {
  const History script = History{}.extended(Action{0}, kOne).extended(Action{1}, kZero);
  const auto mu = make_buddy_env(kBin, script, Action{1});
  CHECK(mu->decision_step() == 3);
  CHECK(mu->state_count() == 5);

  const History pinned = script.extended(Action{1}, kOne).extended(Action{0}, kOne);
  const History other = script.extended(Action{0}, kZero).extended(Action{1}, kZero);
  CHECK(joint_prob(*mu, pinned) == 1);
  CHECK(joint_prob(*mu, other) == 1);
  CHECK(mu->step(script, Action{1})[kOne] == 1);
  CHECK(mu->step(script, Action{0})[kZero] == 1);
  CHECK(mu->step(pinned, Action{0})[kOne] == 1);
  CHECK(mu->step(other, Action{1})[kZero] == 1);

  // Histories leaving the script's percepts have probability zero.
  CHECK(joint_prob(*mu, History{}.extended(Action{0}, kZero)) == 0);

  // Finitely many states: every history maps into [0, k + 2).
  for (std::size_t len = 0; len <= 5; ++len) {
    for (const auto& h : all_histories(kBin, len)) CHECK(mu->state_of(h) < mu->state_count());
  }
  CHECK(mu->state_of(pinned) == 3);
  CHECK(mu->state_of(other) == 4);
}

TEST_CASE("sequence prediction values") {
  const Alphabet a = bits_alphabet();
  const EnvPtr env = make_sequence_prediction_env(a, "0110");
  const auto s6 = DiscountSchedule::finite_lifetime(6);
  const Policy correct = Policy::programmatic("oracle", [](const History& h) {
    return Action{std::string("0110")[h.size() % 4] == '1' ? 1u : 0u};
  });
  CHECK(value(correct, *env, History{}, s6, 6).value == 1);

  const Policy third = Policy::programmatic("third", [](const History& h) {
    const std::size_t t = h.size() + 1;
    const std::size_t bit = std::string("0110")[(t - 1) % 4] == '1';
    return Action{t % 3 == 0 ? bit : 1 - bit};
  });
  for (std::size_t j = 1; j <= 3; ++j) {
    const auto s = DiscountSchedule::finite_lifetime(3 * j);
    CHECK(value(third, *env, History{}, s, 3 * j).value == Rational(1, 3));
  }

  // A uniformly random predictor: average over all open-loop guess strings.
  const auto s4 = DiscountSchedule::finite_lifetime(4);
  Rational total = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    const Policy p = Policy::programmatic("guess", [mask](const History& h) { return Action{(mask >> h.size()) & 1u}; });
    total += value(p, *env, History{}, s4, 4).value;
  }
  CHECK(total / 16 == Rational(1, 2));

  CHECK_THROWS_AS(make_sequence_prediction_env(kBin, "01"), DomainError);
  CHECK_THROWS_AS(make_sequence_prediction_env(a, "012"), DomainError);
}

TEST_CASE("bandit values") {
  const auto s = DiscountSchedule::finite_lifetime(3);
  const EnvPtr sure = make_bernoulli_bandit(kBin, {Rational(1), Rational(0)});
  CHECK(value(Policy::constant(Action{0}), *sure, History{}, s, 3).value == 1);

  const EnvPtr even = make_bernoulli_bandit(kBin, {Rational(1, 2), Rational(1, 2)});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    CHECK(value(support::random_policy(rng, kBin, 3), *even, History{}, s, 3).value == Rational(1, 2));
  }

  const EnvPtr b = make_bernoulli_bandit(kBin, {Rational(3, 4), Rational(1, 4)});
  const auto myopic = DiscountSchedule::finite_lifetime(1);
  CHECK(optimal_value(b, History{}, myopic, 1).value == Rational(3, 4));
  CHECK(optimal_action(b, History{}, myopic, 1, TieBreak::lowest_index()).action == Action{0});

  CHECK_THROWS_AS(make_bernoulli_bandit(kBin, {Rational(3, 2), Rational(0)}), DomainError);
  CHECK_THROWS_AS(make_bernoulli_bandit(kBin, {Rational(1, 2)}), DomainError);
}

TEST_CASE("property: every zoo step is a semimeasure over the alphabet") {
  std::mt19937_64 rng(11);
  const Alphabet a = bits_alphabet();
  const Alphabet coins(2, {{0, Rational(0)}, {1, Rational(0)}, {0, Rational(1)}});
  std::vector<EnvPtr> zoo = {
      make_heaven(kBin),
      make_hell(kBin),
      make_gate_env(kBin, Action{0}),
      make_trapdoor_env(kBin, Action{1}),
      make_bernoulli_bandit(kBin, {Rational(2, 7), Rational(5, 6)}),
      make_sequence_prediction_env(a, "011"),
      make_coin_env(coins, Rational(1, 3)),
      make_random_env(kBin, 1, false),
      make_random_env(kBin, 2, true),
      make_dogmatic_env(Policy::constant(Action{0}), support::standard_class()),
      make_buddy_env(kBin, History{}.extended(Action{1}, 1), Action{0}),
      support::standard_class(),
  };
  for (const auto& env : zoo) {
    for (int i = 0; i < 100; ++i) {
      History h;
      const std::size_t len = rng() % 5;
      for (std::size_t k = 0; k < len; ++k) {
        h.push_back({Action{rng() % 2}, rng() % env->alphabet().num_percepts()});
      }
      if (joint_prob(*env, h) == 0 && env.get() == support::standard_class().get()) continue;
      const Distribution d = env->step(h, Action{rng() % 2});
      REQUIRE(d.size() == env->alphabet().num_percepts());
      for (const auto& p : d) CHECK(p >= 0);
      CHECK(total_mass(d) <= 1);
    }
  }
}

TEST_CASE("random environments are pure functions and may be deficient") {
  const EnvPtr r = make_random_env(kBin, 42, true);
  const History h = History{}.extended(Action{1}, 0);
  CHECK(r->step(h, Action{0}) == r->step(h, Action{0}));
  bool deficient = false;
  for (const auto& x : all_histories(kBin, 2)) deficient = deficient || total_mass(r->step(x, Action{0})) < 1;
  CHECK(deficient);
  const EnvPtr full = make_random_env(kBin, 42, false);
  for (const auto& x : all_histories(kBin, 2)) CHECK(total_mass(full->step(x, Action{1})) == 1);
}
