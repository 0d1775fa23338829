#include "aixilab/zoo.hpp"

namespace aixilab {

namespace {

class ConstantEnvironment final : public Environment {
 public:
  ConstantEnvironment(const Alphabet& alphabet, std::string name, PerceptId percept)
      : Environment(alphabet, std::move(name)), percept_(percept) {}

  Distribution step(const History&, Action) const override {
    return point_mass(alphabet(), percept_);
  }
  std::optional<Rational> absorbing_reward(const History&) const override {
    return alphabet().reward(percept_);
  }

 private:
  PerceptId percept_;
};

class GateEnvironment final : public Environment {
 public:
  GateEnvironment(const Alphabet& alphabet, std::string name, Action pivot, bool pivot_is_heaven)
      : Environment(alphabet, std::move(name)),
        pivot_(pivot),
        pivot_is_heaven_(pivot_is_heaven),
        hell_(alphabet.require(0, Rational(0), "gate environment")),
        heaven_(alphabet.require(0, Rational(1), "gate environment")) {
    alphabet.action(pivot.index);
  }

  Distribution step(const History& h, Action a) const override {
    const Action first = h.empty() ? a : h[0].action;
    return point_mass(alphabet(), (first == pivot_) == pivot_is_heaven_ ? heaven_ : hell_);
  }
  std::optional<Rational> absorbing_reward(const History& h) const override {
    if (h.empty()) return std::nullopt;
    return Rational((h[0].action == pivot_) == pivot_is_heaven_ ? 1 : 0);
  }

 private:
  Action pivot_;
  bool pivot_is_heaven_;
  PerceptId hell_;
  PerceptId heaven_;
};

class BanditEnvironment final : public Environment {
 public:
  BanditEnvironment(const Alphabet& alphabet, std::vector<Rational> means)
      : Environment(alphabet, "bandit"),
        means_(std::move(means)),
        lose_(alphabet.require(0, Rational(0), "bernoulli bandit")),
        win_(alphabet.require(0, Rational(1), "bernoulli bandit")) {
    if (means_.size() != alphabet.num_actions()) {
      throw DomainError("bernoulli bandit needs one arm mean per action");
    }
    for (const auto& m : means_) {
      if (m < 0 || m > 1) throw DomainError("arm mean " + to_string(m) + " outside [0, 1]");
    }
  }

  Distribution step(const History&, Action a) const override {
    Distribution d(alphabet().num_percepts(), Rational(0));
    d[win_] = means_.at(a.index);
    d[lose_] = 1 - means_[a.index];
    return d;
  }

 private:
  std::vector<Rational> means_;
  PerceptId lose_;
  PerceptId win_;
};

class SequencePredictionEnvironment final : public Environment {
 public:
  SequencePredictionEnvironment(const Alphabet& alphabet, std::string bits)
      : Environment(alphabet, "seqpred(" + bits + ")"), bits_(std::move(bits)) {
    if (alphabet.num_actions() != 2) {
      throw DomainError("sequence prediction needs exactly two actions (bit guesses)");
    }
    if (bits_.empty()) throw DomainError("sequence prediction needs a non-empty bit string");
    for (char c : bits_) {
      if (c != '0' && c != '1') throw DomainError("bit string may only contain 0 and 1");
    }
    for (std::size_t bit = 0; bit < 2; ++bit) {
      for (int reward = 0; reward < 2; ++reward) {
        percepts_[bit][reward] = alphabet.require(bit, Rational(reward), "sequence prediction");
      }
    }
  }

  Distribution step(const History& h, Action a) const override {
    const std::size_t bit = bits_[h.size() % bits_.size()] == '1' ? 1 : 0;
    return point_mass(alphabet(), percepts_[bit][a.index == bit ? 1 : 0]);
  }

 private:
  std::string bits_;
  PerceptId percepts_[2][2] = {};
};

class CoinEnvironment final : public Environment {
 public:
  CoinEnvironment(const Alphabet& alphabet, Rational p)
      : Environment(alphabet, "coin(" + to_string(p) + ")"),
        p_(std::move(p)),
        tails_(alphabet.require(0, Rational(0), "coin environment")),
        heads_(alphabet.require(1, Rational(0), "coin environment")) {
    if (p_ < 0 || p_ > 1) throw DomainError("coin bias outside [0, 1]");
  }

  Distribution step(const History&, Action) const override {
    Distribution d(alphabet().num_percepts(), Rational(0));
    d[heads_] = p_;
    d[tails_] = 1 - p_;
    return d;
  }

 private:
  Rational p_;
  PerceptId tails_;
  PerceptId heads_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

class RandomEnvironment final : public Environment {
 public:
  RandomEnvironment(const Alphabet& alphabet, std::uint64_t seed, bool deficit)
      : Environment(alphabet, "random(" + std::to_string(seed) + (deficit ? ", deficit)" : ")")),
        seed_(seed),
        deficit_(deficit) {}

  Distribution step(const History& h, Action a) const override {
    std::uint64_t state = splitmix64(seed_);
    for (const auto& s : h) {
      state = splitmix64(state ^ (s.action.index * 0x100000001B3ULL + s.percept + 1));
    }
    state = splitmix64(state ^ (0xA5A5A5A5ULL + a.index));

    const std::size_t n = alphabet().num_percepts();
    std::vector<unsigned> weights(n);
    unsigned sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      state = splitmix64(state);
      weights[i] = static_cast<unsigned>(state % 4);
      sum += weights[i];
    }
    if (sum == 0) {
      state = splitmix64(state);
      weights[state % n] = 1;
      sum = 1;
    }
    unsigned missing = 0;
    if (deficit_) {
      state = splitmix64(state);
      missing = static_cast<unsigned>(state % 3);
    }
    Distribution d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = Rational(weights[i], sum + missing);
    return d;
  }

 private:
  std::uint64_t seed_;
  bool deficit_;
};

}  // namespace

EnvPtr make_heaven(const Alphabet& alphabet) {
  return std::make_shared<ConstantEnvironment>(alphabet, "heaven",
                                               alphabet.require(0, Rational(1), "heaven"));
}

EnvPtr make_hell(const Alphabet& alphabet) {
  return std::make_shared<ConstantEnvironment>(alphabet, "hell",
                                               alphabet.require(0, Rational(0), "hell"));
}

EnvPtr make_gate_env(const Alphabet& alphabet, Action lucky) {
  return std::make_shared<GateEnvironment>(alphabet, "gate(" + std::to_string(lucky.index) + ")",
                                           lucky, true);
}

EnvPtr make_trapdoor_env(const Alphabet& alphabet, Action doomed) {
  return std::make_shared<GateEnvironment>(
      alphabet, "trapdoor(" + std::to_string(doomed.index) + ")", doomed, false);
}

EnvPtr make_bernoulli_bandit(const Alphabet& alphabet, std::vector<Rational> arm_means) {
  return std::make_shared<BanditEnvironment>(alphabet, std::move(arm_means));
}

EnvPtr make_sequence_prediction_env(const Alphabet& alphabet, std::string bits) {
  return std::make_shared<SequencePredictionEnvironment>(alphabet, std::move(bits));
}

EnvPtr make_coin_env(const Alphabet& alphabet, Rational p) {
  return std::make_shared<CoinEnvironment>(alphabet, std::move(p));
}

EnvPtr make_random_env(const Alphabet& alphabet, std::uint64_t seed, bool deficit) {
  return std::make_shared<RandomEnvironment>(alphabet, seed, deficit);
}

// --- dogmatic -------------------------------------------------------------

DogmaticEnvironment::DogmaticEnvironment(Policy pi, EnvPtr base)
    : Environment(base->alphabet(), "dogmatic(" + pi.name() + ", " + base->name() + ")"),
      pi_(std::move(pi)),
      base_(std::move(base)),
      hell_(alphabet().require(0, Rational(0), "dogmatic environment")) {}

std::optional<std::size_t> DogmaticEnvironment::first_deviation(const History& h) const {
  History prefix;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (pi_(prefix) != h[k].action) return k;
    prefix.push_back(h[k]);
  }
  return std::nullopt;
}

Distribution DogmaticEnvironment::step(const History& h, Action a) const {
  if (first_deviation(h) || pi_(h) != a) return point_mass(alphabet(), hell_);
  return base_->step(h, a);
}

std::optional<Rational> DogmaticEnvironment::absorbing_reward(const History& h) const {
  if (first_deviation(h)) return Rational(0);
  return std::nullopt;
}

std::shared_ptr<const DogmaticEnvironment> make_dogmatic_env(Policy pi, EnvPtr base) {
  return std::make_shared<DogmaticEnvironment>(std::move(pi), std::move(base));
}

// --- buddy ----------------------------------------------------------------

BuddyEnvironment::BuddyEnvironment(const Alphabet& alphabet, History script, Action pinned)
    : Environment(alphabet, "buddy(" + script.str() + " -> " + std::to_string(pinned.index) + ")"),
      script_(std::move(script)),
      pinned_(alphabet.action(pinned.index)),
      good_(alphabet.require(0, Rational(1), "buddy environment")),
      bad_(alphabet.require(0, Rational(0), "buddy environment")) {
  for (const auto& s : script_) {
    alphabet.action(s.action.index);
    if (s.percept >= alphabet.num_percepts()) throw DomainError("buddy script percept out of range");
  }
}

Distribution BuddyEnvironment::step(const History& h, Action a) const {
  const std::size_t t = h.size() + 1;
  const std::size_t k = decision_step();
  if (t < k) return point_mass(alphabet(), script_[t - 1].percept);
  const Action decided = t == k ? a : h[k - 1].action;
  return point_mass(alphabet(), decided == pinned_ ? good_ : bad_);
}

std::optional<Rational> BuddyEnvironment::absorbing_reward(const History& h) const {
  const std::size_t k = decision_step();
  if (h.size() < k) return std::nullopt;
  return Rational(h[k - 1].action == pinned_ ? 1 : 0);
}

std::size_t BuddyEnvironment::state_of(const History& h) const {
  const std::size_t k = decision_step();
  if (h.size() < k) return h.size();
  return h[k - 1].action == pinned_ ? k : k + 1;
}

std::shared_ptr<const BuddyEnvironment> make_buddy_env(const Alphabet& alphabet, History script,
                                                       Action pinned) {
  return std::make_shared<BuddyEnvironment>(alphabet, std::move(script), pinned);
}

}  // namespace aixilab
