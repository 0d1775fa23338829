#include "aixilab/priors.hpp"

#include <algorithm>

namespace aixilab {

MaskedEnvironment::MaskedEnvironment(EnvPtr inner, std::vector<Action> mask)
    : Environment(inner->alphabet(), "masked"), inner_(std::move(inner)), mask_(std::move(mask)) {
  for (const auto& s : mask_) alphabet().action(s.index);
}

Action MaskedEnvironment::masked(Action a, std::size_t step) const {
  if (step == 0 || step > mask_.size()) return a;
  return Action{(a.index + mask_[step - 1].index) % alphabet().num_actions()};
}

History MaskedEnvironment::masked(const History& h) const {
  History out;
  for (std::size_t k = 0; k < h.size(); ++k) out.push_back({masked(h[k].action, k + 1), h[k].percept});
  return out;
}

Distribution MaskedEnvironment::step(const History& h, Action a) const {
  return inner_->step(masked(h), masked(a, h.size() + 1));
}

std::optional<Rational> MaskedEnvironment::absorbing_reward(const History& h) const {
  return inner_->absorbing_reward(masked(h));
}

MixturePtr make_indifference_mixture(const MixturePtr& xi, std::size_t m) {
  if (m == 0) throw DomainError("indifference mixture needs a positive lifetime");
  const std::size_t n = xi->alphabet().num_actions();
  std::size_t masks = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (masks > (std::size_t{1} << 20) / n) throw DomainError("indifference mixture too large");
    masks *= n;
  }

  std::vector<Component> components;
  components.reserve(masks * xi->components().size());
  std::vector<Action> mask(m, Action{0});
  for (std::size_t code = 0; code < masks; ++code) {
    std::size_t rest = code;
    for (std::size_t k = m; k-- > 0;) {
      mask[k] = Action{rest % n};
      rest /= n;
    }
    for (const auto& c : xi->components()) {
      components.push_back({c.weight / masks, std::make_shared<MaskedEnvironment>(c.env, mask)});
    }
  }
  return make_mixture(xi->alphabet(), std::move(components),
                      "indifference(" + xi->name() + ", m=" + std::to_string(m) + ")");
}

MixturePtr make_dogmatic_mixture(const Policy& pi, const MixturePtr& xi, const Rational& eps) {
  if (eps <= 0 || eps > 1) throw DomainError("dogmatic mixture needs 0 < eps <= 1");
  return mix(eps / 2, *xi, Rational(1, 2), make_dogmatic_env(pi, xi),
             "dogmatic_mixture(" + pi.name() + ", eps=" + to_string(eps) + ")");
}

std::vector<History> on_policy_histories(const Policy& pi, const Environment& env,
                                         std::size_t depth) {
  std::vector<History> out;
  if (depth == 0 || joint_prob(env, History{}) == 0) return out;
  std::vector<History> level{History{}};
  for (std::size_t len = 0; len < depth; ++len) {
    out.insert(out.end(), level.begin(), level.end());
    if (len + 1 == depth) break;
    std::vector<History> next;
    for (const auto& h : level) {
      const Action a = pi(h);
      const Distribution d = env.step(h, a);
      for (PerceptId e = 0; e < d.size(); ++e) {
        if (d[e] > 0) next.push_back(h.extended(a, e));
      }
    }
    level = std::move(next);
  }
  return out;
}

EmulationMixture make_emulation_mixture(const Policy& pi, const MixturePtr& xi, const Rational& eps,
                                        const DiscountSchedule& schedule, std::size_t horizon) {
  if (eps <= 0) throw DomainError("emulation needs eps > 0");
  EmulationMixture out;
  out.k = schedule.effective_horizon(eps);
  const auto histories = on_policy_histories(pi, *xi, out.k);
  out.histories_checked = histories.size();
  std::optional<Rational> lowest;
  for (const auto& h : histories) {
    const ValueResult v = value(pi, *xi, h, schedule, horizon);
    if (v.value == 0) {
      throw DomainError("policy '" + pi.name() + "' has value 0 at on-policy history " + h.str() +
                        "; no dogmatism threshold exists");
    }
    if (!lowest || v.value < *lowest) lowest = v.value;
  }
  out.min_on_policy_value = lowest.value_or(Rational(1));
  out.eps_prime = out.min_on_policy_value / 2;
  out.mixture = make_dogmatic_mixture(pi, xi, out.eps_prime);
  return out;
}

MixturePtr make_adversarial_gate_mixture(Action first_action, const MixturePtr& xi,
                                         const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw DomainError("adversarial gate mixture needs 0 < eps < 1");
  return mix(eps, *xi, 1 - eps, make_trapdoor_env(xi->alphabet(), first_action),
             "adversarial_gate(" + std::to_string(first_action.index) + ", eps=" + to_string(eps) + ")");
}

}  // namespace aixilab
