#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aixilab/certify.hpp"
#include "aixilab/zoo.hpp"

namespace aixilab {

/// Every tabular policy over histories shorter than `depth` (all action and
/// percept branches, consistent or not). Policy i plays digit j of i in
/// base |A| (most significant first) at the j-th history in canonical
/// order, and `fallback` on longer histories. Size |A|^(#histories).
class PolicySpace {
 public:
  PolicySpace(Alphabet alphabet, std::size_t depth, Action fallback = Action{0});

  std::size_t size() const { return size_; }
  std::size_t depth() const { return depth_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<History>& histories() const { return histories_; }

  std::vector<Action> table(std::size_t index) const;
  Policy policy(std::size_t index) const;

 private:
  Alphabet alphabet_;
  std::size_t depth_;
  Action fallback_;
  std::vector<History> histories_;
  std::size_t size_ = 1;
};

enum class Dominance { dominates, does_not_dominate, uncertifiable };

std::string to_string(Dominance d);

/// Does a policy with `challenger` values dominate one with `incumbent`
/// values (>= everywhere, > somewhere)? One interval per environment.
Dominance dominance(const std::vector<Interval>& challenger, const std::vector<Interval>& incumbent);

Dominance dominates(const Policy& pi_tilde, const Policy& pi, const std::vector<EnvPtr>& envs,
                    const DiscountSchedule& schedule, std::size_t horizon);

struct SeparatingHistory {
  History history;    // h', consistent with both policies
  std::size_t k = 0;  // |h'| + 1
  Action pi_action;
  Action pi_tilde_action;
};

class NoSeparatingHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Breadth-first, canonical-order scan over histories consistent with both
/// policies and of positive rho-probability, shorter than `horizon`. Returns
/// the first h' with pi(h') != pi_tilde(h') and V^pi_tilde_rho(h') >
/// V^pi_rho(h') (certified).
SeparatingHistory find_separating_history(const Policy& pi, const Policy& pi_tilde,
                                          const Environment& rho, const DiscountSchedule& schedule,
                                          std::size_t horizon);

/// First history (shortest, then canonical order) shorter than `depth` that
/// is consistent with both policies and where they disagree.
std::optional<History> first_disagreement(const Policy& pi, const Policy& pi_tilde,
                                          const Alphabet& alphabet, std::size_t depth);

struct BuddyGap {
  std::shared_ptr<const BuddyEnvironment> buddy;
  /// Gamma_1 * (V^pi_mu(e) - V^pi_tilde_mu(e)), the gap in undiscounted-sum
  /// units.
  Rational gap;
  Rational expected;  // Gamma_k
  bool matches = false;
};

/// Builds the buddy environment that replays sep.history and rewards
/// pi(h'), evaluates both policies in it exactly and compares the gap to
/// Gamma_k.
BuddyGap verify_buddy_gap(const Policy& pi, const Policy& pi_tilde, const SeparatingHistory& sep,
                          const Alphabet& alphabet, const DiscountSchedule& schedule);

struct BuddyGapCase {
  std::size_t pi = 0;
  std::size_t pi_tilde = 0;
  SeparatingHistory sep;
  BuddyGap result;
};

/// For every ordered pair of policies in the space that disagree on some
/// jointly consistent history within the schedule's reach: take as witness
/// rho the buddy of pi_tilde at their first disagreement, find the
/// separating history in rho and verify the buddy gap for pi.
std::vector<BuddyGapCase> buddy_gap_sweep(const PolicySpace& space, const DiscountSchedule& schedule,
                                          std::size_t jobs = 1);

struct Defense {
  std::size_t defended = 0;
  std::size_t attacker = 0;
  std::size_t witness = 0;  // environment index where the attacker was strictly better
  SeparatingHistory sep;
  std::size_t buddy = 0;    // environment index of the defending buddy
  BuddyGap gap;
};

struct ParetoReport {
  std::vector<EnvPtr> envs;
  std::size_t base_size = 0;
  std::vector<Defense> defenses;
  /// values[p][e]: V^p_e(epsilon), exact.
  std::vector<std::vector<Rational>> values;
  /// matrix[attacker][defended].
  std::vector<std::vector<Dominance>> matrix;
  std::vector<bool> pareto_optimal;
  bool all_pareto_optimal = false;
  std::size_t rounds = 0;
};

/// Exhaustive Pareto check of every policy in `space` against every other.
/// With `add_buddies`, buddy environments are added until no policy
/// dominates another (the class is closed under the defenses it needs).
/// Requires a finite-lifetime schedule so that all values are exact.
ParetoReport verify_pareto_triviality(const std::vector<EnvPtr>& envs, const PolicySpace& space,
                                      const DiscountSchedule& schedule, bool add_buddies = true,
                                      std::size_t jobs = 1);

}  // namespace aixilab
