#include "aixilab/mixture.hpp"

namespace aixilab {

Mixture::Mixture(const Alphabet& alphabet, std::vector<Component> components, std::string name)
    : Environment(alphabet, std::move(name)), components_(std::move(components)) {
  if (components_.empty()) throw DomainError("mixture needs at least one component");
  Rational sum(0);
  for (const auto& c : components_) {
    if (!c.env) throw DomainError("mixture component is null");
    if (c.weight <= 0) throw DomainError("mixture weights must be positive, got " + to_string(c.weight));
    if (!(c.env->alphabet() == alphabet)) {
      throw DomainError("mixture component '" + c.env->name() + "' uses a different alphabet");
    }
    sum += c.weight;
  }
  if (sum > 1) throw DomainError("mixture weights sum to " + to_string(sum) + " > 1");
}

Rational Mixture::total_weight() const {
  Rational sum(0);
  for (const auto& c : components_) sum += c.weight;
  return sum;
}

Rational Mixture::initial_mass() const {
  Rational sum(0);
  for (const auto& c : components_) sum += c.weight * c.env->initial_mass();
  return sum;
}

Distribution Mixture::step(const History& h, Action a) const {
  const Posterior post = posterior(*this, h);
  Distribution out(alphabet().num_percepts(), Rational(0));
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (post.weights[i] == 0) continue;
    const Distribution d = components_[i].env->step(h, a);
    for (std::size_t e = 0; e < out.size(); ++e) out[e] += post.weights[i] * d[e];
  }
  return out;
}

std::optional<Rational> Mixture::absorbing_reward(const History& h) const {
  const Posterior post = posterior(*this, h);
  Rational reward(0);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (post.weights[i] == 0) continue;
    auto r = components_[i].env->absorbing_reward(h);
    if (!r) return std::nullopt;
    reward += post.weights[i] * *r;
  }
  return reward;
}

MixturePtr make_mixture(const Alphabet& alphabet, std::vector<Component> components,
                        std::string name) {
  return std::make_shared<Mixture>(alphabet, std::move(components), std::move(name));
}

Posterior posterior(const Mixture& xi, const History& h) {
  Posterior out;
  out.weights.reserve(xi.components().size());
  out.evidence = 0;
  for (const auto& c : xi.components()) {
    Rational mass = c.weight * joint_prob(*c.env, h);
    out.evidence += mass;
    out.weights.push_back(std::move(mass));
  }
  if (out.evidence == 0) {
    throw MeasureZeroHistory("mixture '" + xi.name() + "' assigns probability 0 to history " + h.str());
  }
  for (auto& w : out.weights) w /= out.evidence;
  return out;
}

Distribution mixture_step(const Mixture& xi, const History& h, Action a) { return xi.step(h, a); }

MixturePtr mix(const Rational& q, const Mixture& xi, const Rational& q_prime, EnvPtr rho,
               std::string name) {
  if (q <= 0) throw DomainError("mix needs q > 0");
  if (q_prime < 0) throw DomainError("mix needs q' >= 0");
  if (q + q_prime > 1) throw DomainError("mix needs q + q' <= 1");
  std::vector<Component> components;
  if (q_prime > 0) {
    if (!rho) throw DomainError("mix with q' > 0 needs an environment");
    components.push_back({q_prime, std::move(rho)});
  }
  for (const auto& c : xi.components()) components.push_back({q * c.weight, c.env});
  return make_mixture(xi.alphabet(), std::move(components), std::move(name));
}

}  // namespace aixilab
