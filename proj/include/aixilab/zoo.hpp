#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aixilab/environment.hpp"
#include "aixilab/policy.hpp"

namespace aixilab {

/// Reward 1 forever: percept (0,1) with probability one.
EnvPtr make_heaven(const Alphabet& alphabet);

/// Reward 0 forever: percept (0,0) with probability one.
EnvPtr make_hell(const Alphabet& alphabet);

/// The first action decides the agent's fate: `lucky` leads to heaven from
/// step 1 on (reward 1 already on the first percept), every other action to
/// hell.
EnvPtr make_gate_env(const Alphabet& alphabet, Action lucky);

/// Mirror image of the gate: `doomed` leads to hell, every other first
/// action to heaven.
EnvPtr make_trapdoor_env(const Alphabet& alphabet, Action doomed);

/// One arm per action. Pulling arm a yields (0,1) with probability
/// arm_means[a] and (0,0) otherwise.
EnvPtr make_bernoulli_bandit(const Alphabet& alphabet, std::vector<Rational> arm_means);

/// Binary prediction of a cyclic bit string: at step t the observation is
/// bits[(t-1) mod n] and the reward is 1 iff the action equals that bit.
/// Needs two actions and the four percepts (b, r) with b, r in {0, 1}.
EnvPtr make_sequence_prediction_env(const Alphabet& alphabet, std::string bits);

/// Observation 1 with probability p (else 0), reward 0, independent of
/// actions.
EnvPtr make_coin_env(const Alphabet& alphabet, Rational p);

/// Pseudo-random stochastic environment. Every (history, action) pair gets
/// its own small-denominator distribution derived from a hash of the seed,
/// so the environment is a pure function. With `deficit` set, some steps
/// leave probability mass unassigned.
EnvPtr make_random_env(const Alphabet& alphabet, std::uint64_t seed, bool deficit);

/// Mirrors `base` for as long as the agent follows `pi`. From the first
/// deviation on it emits (0,0) with probability one, so the joint
/// probability of a deviating history is base(e_{<k} || a_{<k}) when every
/// later percept is (0,0) and zero otherwise.
class DogmaticEnvironment final : public Environment {
 public:
  DogmaticEnvironment(Policy pi, EnvPtr base);

  Distribution step(const History& h, Action a) const override;
  Rational initial_mass() const override { return base_->initial_mass(); }
  std::optional<Rational> absorbing_reward(const History& h) const override;

  /// Index of the first step whose action disagrees with pi, if any.
  std::optional<std::size_t> first_deviation(const History& h) const;

  const Policy& protected_policy() const { return pi_; }
  const EnvPtr& base() const { return base_; }

 private:
  Policy pi_;
  EnvPtr base_;
  PerceptId hell_;
};

std::shared_ptr<const DogmaticEnvironment> make_dogmatic_env(Policy pi, EnvPtr base);

/// Deterministic environment that replays the percepts of `script`
/// (length k-1) and then looks at the action taken at step k: `pinned`
/// earns (0,1) forever, anything else (0,0) forever. A finite-state machine
/// with k + 2 states.
class BuddyEnvironment final : public Environment {
 public:
  BuddyEnvironment(const Alphabet& alphabet, History script, Action pinned);

  Distribution step(const History& h, Action a) const override;
  std::optional<Rational> absorbing_reward(const History& h) const override;

  /// k = |script| + 1, the step at which the pinned action is checked.
  std::size_t decision_step() const { return script_.size() + 1; }
  const History& script() const { return script_; }
  Action pinned() const { return pinned_; }

  std::size_t state_count() const { return script_.size() + 3; }
  /// Machine state after history h: 0..k-1 while replaying / awaiting the
  /// decision, k for the rewarded branch, k+1 for the punished branch.
  std::size_t state_of(const History& h) const;

 private:
  History script_;
  Action pinned_;
  PerceptId good_;
  PerceptId bad_;
};

std::shared_ptr<const BuddyEnvironment> make_buddy_env(const Alphabet& alphabet, History script,
                                                       Action pinned);

}  // namespace aixilab
