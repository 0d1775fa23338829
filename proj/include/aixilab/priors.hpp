#pragma once

#include <memory>
#include <vector>

#include "aixilab/mixture.hpp"
#include "aixilab/planner.hpp"
#include "aixilab/zoo.hpp"

namespace aixilab {

/// `inner` driven by masked actions: the action at step k is replaced by
/// (a_k + mask_k) mod |A| for k <= |mask| and passed through unchanged
/// afterwards.
class MaskedEnvironment final : public Environment {
 public:
  MaskedEnvironment(EnvPtr inner, std::vector<Action> mask);

  Distribution step(const History& h, Action a) const override;
  Rational initial_mass() const override { return inner_->initial_mass(); }
  std::optional<Rational> absorbing_reward(const History& h) const override;

  History masked(const History& h) const;
  Action masked(Action a, std::size_t step) const;

 private:
  EnvPtr inner_;
  std::vector<Action> mask_;
};

/// Averages xi over all |A|^m action masks: every component (w, nu) of xi
/// becomes |A|^m components (w / |A|^m, nu masked by s), s ranging over
/// A^m. The joint probability of any m percepts is then the same for every
/// action string, so under a lifetime of at most m all actions tie.
MixturePtr make_indifference_mixture(const MixturePtr& xi, std::size_t m);

/// 1/2 * dogmatic(pi, xi) + (eps/2) * xi, dogmatic component first.
/// Requires 0 < eps <= 1 and (0,0) among the percepts.
MixturePtr make_dogmatic_mixture(const Policy& pi, const MixturePtr& xi, const Rational& eps);

struct EmulationMixture {
  MixturePtr mixture;
  /// Effective horizon for the target accuracy: Gamma_{k+1}/Gamma_1 < eps.
  std::size_t k = 0;
  /// Dogmatism threshold handed to make_dogmatic_mixture.
  Rational eps_prime;
  /// Smallest V^pi_xi(h) over on-policy histories with |h| < k and
  /// xi(h) > 0 (a lower bound when the search truncates).
  Rational min_on_policy_value;
  std::size_t histories_checked = 0;
};

/// Dogmatic mixture whose optimal policies follow pi for the first k steps,
/// so their value in any environment is within eps of pi's. Throws
/// DomainError if pi has value 0 at some on-policy history, since then no
/// dogmatism threshold works.
EmulationMixture make_emulation_mixture(const Policy& pi, const MixturePtr& xi, const Rational& eps,
                                        const DiscountSchedule& schedule, std::size_t horizon);

/// eps * xi + (1 - eps) * trapdoor(first_action): taking `first_action` at
/// the start leads to hell, any other first action to heaven. 0 < eps < 1.
MixturePtr make_adversarial_gate_mixture(Action first_action, const MixturePtr& xi,
                                         const Rational& eps);

/// Histories of length < depth that are consistent with pi and have
/// positive probability under env, in canonical order.
std::vector<History> on_policy_histories(const Policy& pi, const Environment& env,
                                         std::size_t depth);

}  // namespace aixilab
