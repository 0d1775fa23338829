#include "aixilab/types.hpp"

#include <sstream>

namespace aixilab {

Alphabet::Alphabet(std::size_t num_actions, std::vector<Percept> percepts)
    : num_actions_(num_actions), percepts_(std::move(percepts)) {
  if (num_actions_ < 2) throw DomainError("alphabet needs at least two actions");
  if (percepts_.empty()) throw DomainError("alphabet needs at least one percept");
  for (std::size_t i = 0; i < percepts_.size(); ++i) {
    const auto& p = percepts_[i];
    if (p.reward < 0 || p.reward > 1) {
      throw DomainError("percept reward " + to_string(p.reward) + " outside [0, 1]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (percepts_[j] == p) throw DomainError("duplicate percept in alphabet");
    }
  }
}

Alphabet Alphabet::binary() { return Alphabet(2, {{0, Rational(0)}, {0, Rational(1)}}); }

std::optional<PerceptId> Alphabet::find(std::size_t observation, const Rational& reward) const {
  for (PerceptId id = 0; id < percepts_.size(); ++id) {
    if (percepts_[id].observation == observation && percepts_[id].reward == reward) return id;
  }
  return std::nullopt;
}

PerceptId Alphabet::require(std::size_t observation, const Rational& reward,
                            const std::string& who) const {
  if (auto id = find(observation, reward)) return *id;
  throw DomainError(who + " requires percept (" + std::to_string(observation) + ", " +
                    to_string(reward) + ") in the declared percept set");
}

Action Alphabet::action(std::size_t index) const {
  if (index >= num_actions_) {
    throw DomainError("action " + std::to_string(index) + " outside alphabet of size " +
                      std::to_string(num_actions_));
  }
  return Action{index};
}

History History::extended(Action a, PerceptId e) const {
  History out = *this;
  out.push_back({a, e});
  return out;
}

History History::prefix(std::size_t length) const {
  return History(std::vector<Interaction>(steps_.begin(),
                                          steps_.begin() + static_cast<std::ptrdiff_t>(length)));
}

std::string History::str() const {
  if (steps_.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) os << ' ';
    os << 'a' << steps_[i].action.index << 'e' << steps_[i].percept;
  }
  return os.str();
}

std::vector<History> all_histories(const Alphabet& alphabet, std::size_t length) {
  std::vector<History> level{History{}};
  for (std::size_t depth = 0; depth < length; ++depth) {
    std::vector<History> next;
    next.reserve(level.size() * alphabet.num_actions() * alphabet.num_percepts());
    for (const auto& h : level) {
      for (std::size_t a = 0; a < alphabet.num_actions(); ++a) {
        for (PerceptId e = 0; e < alphabet.num_percepts(); ++e) {
          next.push_back(h.extended(Action{a}, e));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace aixilab
