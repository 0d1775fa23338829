#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aixilab/rational.hpp"

namespace aixilab {

/// Raised when a constructor or experiment is handed parameters outside its
/// declared domain (bad weights, missing percepts, unsupported schedule...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when conditioning on a history the environment assigns
/// probability zero.
class MeasureZeroHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Action {
  std::size_t index = 0;

  auto operator<=>(const Action&) const = default;
};

/// Index of a percept inside its Alphabet.
using PerceptId = std::size_t;

struct Percept {
  std::size_t observation = 0;
  Rational reward;

  bool operator==(const Percept&) const = default;
};

/// The declared action set A = {0, ..., n-1} and the finite percept set E.
/// Environments only ever emit percepts from their alphabet.
class Alphabet {
 public:
  Alphabet(std::size_t num_actions, std::vector<Percept> percepts);

  /// Two actions and the percepts (0,0), (0,1).
  static Alphabet binary();

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_percepts() const { return percepts_.size(); }
  const Percept& percept(PerceptId id) const { return percepts_.at(id); }
  const std::vector<Percept>& percepts() const { return percepts_; }
  const Rational& reward(PerceptId id) const { return percepts_[id].reward; }

  std::optional<PerceptId> find(std::size_t observation, const Rational& reward) const;

  /// Like find(), but throws DomainError naming `who` when the percept is
  /// not declared.
  PerceptId require(std::size_t observation, const Rational& reward, const std::string& who) const;

  Action action(std::size_t index) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::size_t num_actions_;
  std::vector<Percept> percepts_;
};

struct Interaction {
  Action action;
  PerceptId percept = 0;

  auto operator<=>(const Interaction&) const = default;
};

/// a_1 e_1 ... a_{t-1} e_{t-1}. Ordering is the canonical lexicographic one:
/// per step the action index first, then the percept index; a proper prefix
/// sorts before its extensions.
class History {
 public:
  History() = default;
  explicit History(std::vector<Interaction> steps) : steps_(std::move(steps)) {}

  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const Interaction& operator[](std::size_t i) const { return steps_[i]; }
  const Interaction& back() const { return steps_.back(); }
  auto begin() const { return steps_.begin(); }
  auto end() const { return steps_.end(); }

  void push_back(Interaction step) { steps_.push_back(step); }
  void pop_back() { steps_.pop_back(); }

  History extended(Action a, PerceptId e) const;
  History prefix(std::size_t length) const;

  std::string str() const;

  auto operator<=>(const History&) const = default;
  bool operator==(const History&) const = default;

 private:
  std::vector<Interaction> steps_;
};

/// All histories of exactly `length` steps over the alphabet, in canonical
/// order. Grows as (|A||E|)^length; callers keep length small.
std::vector<History> all_histories(const Alphabet& alphabet, std::size_t length);

}  // namespace aixilab
