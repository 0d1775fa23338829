#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aixilab/types.hpp"

namespace aixilab {

/// Next-percept probabilities indexed by PerceptId. Entries are nonnegative
/// and sum to at most 1; the missing mass is the chance the environment
/// ends.
using Distribution = std::vector<Rational>;

/// A chronological conditional semimeasure, given by its one-step
/// conditionals nu(e_t | ae_{<t} a_t). step() only ever sees the past and
/// the current action, so chronology holds by construction.
class Environment {
 public:
  Environment(Alphabet alphabet, std::string name)
      : alphabet_(std::move(alphabet)), name_(std::move(name)) {}
  virtual ~Environment() = default;

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  virtual Distribution step(const History& h, Action a) const = 0;

  /// nu(epsilon). 1 for plain environments; the total prior weight for
  /// mixtures.
  virtual Rational initial_mass() const { return Rational(1); }

  /// If, from h on, every action leads with probability one to a percept
  /// with reward r forever, returns r. Lets the planner value such tails in
  /// closed form instead of truncating them.
  virtual std::optional<Rational> absorbing_reward(const History& h) const;

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }

 private:
  Alphabet alphabet_;
  std::string name_;
};

using EnvPtr = std::shared_ptr<const Environment>;

/// nu(h) = nu(epsilon) * prod_t nu(e_t | ae_{<t} a_t).
Rational joint_prob(const Environment& env, const History& h);

Distribution point_mass(const Alphabet& alphabet, PerceptId id);

/// Sum of the entries; at most 1 for a valid step.
Rational total_mass(const Distribution& d);

}  // namespace aixilab
