#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aixilab/environment.hpp"

namespace aixilab {

struct Component {
  Rational weight;
  EnvPtr env;
};

/// Posterior weights w_nu(h) = w_nu * nu(h) / xi(h) at one history, in
/// component order, together with the evidence xi(h).
struct Posterior {
  std::vector<Rational> weights;
  Rational evidence;
};

/// xi = sum_nu w_nu nu over a finite class. Weights are strictly positive
/// and sum to at most 1; they are never renormalized. A Mixture is itself an
/// Environment, so mixtures nest.
class Mixture final : public Environment {
 public:
  Mixture(const Alphabet& alphabet, std::vector<Component> components,
          std::string name = "mixture");

  /// sum_nu w_nu(h) * nu.step(h, a). Throws MeasureZeroHistory if xi(h) = 0.
  Distribution step(const History& h, Action a) const override;
  Rational initial_mass() const override;
  std::optional<Rational> absorbing_reward(const History& h) const override;

  const std::vector<Component>& components() const { return components_; }
  Rational total_weight() const;

 private:
  std::vector<Component> components_;
};

using MixturePtr = std::shared_ptr<const Mixture>;

MixturePtr make_mixture(const Alphabet& alphabet, std::vector<Component> components,
                        std::string name = "mixture");

/// Throws MeasureZeroHistory when xi(h) = 0. Components with nu(h) = 0 get
/// weight exactly 0.
Posterior posterior(const Mixture& xi, const History& h);

Distribution mixture_step(const Mixture& xi, const History& h, Action a);

/// q * xi + q' * rho with q > 0, q' >= 0 and q + q' <= 1. The result lists
/// (q', rho) first (omitted when q' = 0), followed by xi's components with
/// their weights scaled by q.
MixturePtr mix(const Rational& q, const Mixture& xi, const Rational& q_prime, EnvPtr rho,
               std::string name = "mixture");

}  // namespace aixilab
