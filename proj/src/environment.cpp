#include "aixilab/environment.hpp"

namespace aixilab {

std::optional<Rational> Environment::absorbing_reward(const History&) const { return std::nullopt; }

Rational joint_prob(const Environment& env, const History& h) {
  Rational p = env.initial_mass();
  History prefix;
  for (const auto& step : h) {
    if (p == 0) return p;
    p *= env.step(prefix, step.action).at(step.percept);
    prefix.push_back(step);
  }
  return p;
}

Distribution point_mass(const Alphabet& alphabet, PerceptId id) {
  Distribution d(alphabet.num_percepts(), Rational(0));
  d.at(id) = 1;
  return d;
}

Rational total_mass(const Distribution& d) {
  Rational sum(0);
  for (const auto& p : d) sum += p;
  return sum;
}

}  // namespace aixilab
