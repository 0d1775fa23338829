#include "aixilab/intelligence.hpp"

namespace aixilab {

namespace {

Interval shifted(const Interval& i, const Rational& by) { return {i.lo + by, i.hi + by}; }

}  // namespace

ValueResult upsilon(const Environment& xi, const Policy& pi, const DiscountSchedule& schedule,
                    std::size_t horizon) {
  return value(pi, xi, History{}, schedule, horizon);
}

UpsilonBounds upsilon_bounds(const EnvPtr& xi, const DiscountSchedule& schedule, std::size_t horizon) {
  return {pessimal_value(xi, History{}, schedule, horizon),
          optimal_value(xi, History{}, schedule, horizon)};
}

IntelligenceReport intelligence_report(const EnvPtr& xi, const Policy& pi,
                                       const DiscountSchedule& schedule, std::size_t horizon) {
  IntelligenceReport out;
  out.horizon = horizon;
  out.upsilon = upsilon(*xi, pi, schedule, horizon);
  const UpsilonBounds b = upsilon_bounds(xi, schedule, horizon);
  out.lower = b.lower;
  out.upper = b.upper;
  out.strict_bounds = combine({
      certify_less(Interval::point(Rational(0)), Interval::of(out.lower)),
      certify_less_equal(Interval::of(out.lower), Interval::of(out.upsilon)),
      certify_less_equal(Interval::of(out.upsilon), Interval::of(out.upper)),
      certify_less(Interval::of(out.upper), Interval::point(Rational(1))),
  });
  return out;
}

Policy truncate_policy(const Policy& pi, std::size_t k, Action fallback) {
  return Policy::truncated(pi, k, fallback);
}

GapReport intelligence_gap_experiment(Action lucky, const Rational& gate_weight,
                                      const Rational& base_weight, const MixturePtr& xi,
                                      const DiscountSchedule& schedule, std::size_t horizon,
                                      const std::vector<Policy>& samples) {
  const Alphabet& alphabet = xi->alphabet();
  alphabet.action(lucky.index);
  GapReport out;
  out.degenerate = gate_weight == 0;
  out.mixture = mix(base_weight, *xi, gate_weight, make_gate_env(alphabet, lucky),
                    "gap_mixture(" + to_string(gate_weight) + ", " + to_string(base_weight) + ")");
  const Rational total = out.mixture->initial_mass();
  out.high = gate_weight / total;
  out.low = base_weight * xi->initial_mass() / total;

  const TieBreak tb = TieBreak::lowest_index();
  const ActionChoice best = optimal_action(out.mixture, History{}, schedule, horizon, tb);
  const ActionChoice worst = pessimal_action(out.mixture, History{}, schedule, horizon, tb);

  std::vector<Outcome> sides;
  for (std::size_t a = 0; a < alphabet.num_actions(); ++a) {
    FirstActionRange r;
    r.first = Action{a};
    r.lucky = r.first == lucky;
    r.lowest = {worst.action_values[a], horizon, worst.truncation_bound};
    r.highest = {best.action_values[a], horizon, best.truncation_bound};
    if (r.lucky) {
      sides.push_back(certify_less(Interval::point(out.high), Interval::of(r.lowest)));
    } else {
      sides.push_back(certify_less(Interval::of(r.highest), Interval::point(out.low)));
    }
    out.ranges.push_back(std::move(r));
  }
  out.empty_interval = out.degenerate ? Outcome::falsified : combine(sides);

  for (const auto& pi : samples) {
    SampleScore s;
    s.policy = pi.name();
    s.first = pi(History{});
    s.score = upsilon(*out.mixture, pi, schedule, horizon);
    s.side = s.first == lucky ? certify_less(Interval::point(out.high), Interval::of(s.score))
                              : certify_less(Interval::of(s.score), Interval::point(out.low));
    out.samples.push_back(std::move(s));
  }
  return out;
}

StupidityReport stupidity_experiment(const MixturePtr& xi, const Rational& eps,
                                     const DiscountSchedule& schedule, std::size_t horizon,
                                     const TieBreak& tb, const Policy& user_policy) {
  if (eps <= 0) throw DomainError("stupidity experiment needs eps > 0");
  StupidityReport out;
  const Rational half = eps / 2;

  // A computable near-minimizer: the pessimal policy memorized for k steps.
  out.truncation_depth = schedule.effective_horizon(half);
  const Policy minimizer = pessimal_policy(xi, schedule, horizon, tb);
  const Policy near_pessimal = truncate_policy(minimizer, out.truncation_depth, Action{0});
  out.lower = pessimal_value(xi, History{}, schedule, horizon);
  out.near_pessimal = upsilon(*xi, near_pessimal, schedule, horizon);
  const Rational agreement_bound =
      schedule.big_gamma(out.truncation_depth + 1) / schedule.big_gamma(1);
  out.density = certify_less_equal(Interval::of(out.near_pessimal),
                                   shifted(Interval::of(out.lower), agreement_bound));

  out.stupid_prior = make_emulation_mixture(near_pessimal, xi, half, schedule, horizon);
  const Policy stupid_agent = optimal_policy(out.stupid_prior.mixture, schedule, horizon, tb);
  out.stupid_agent = upsilon(*xi, stupid_agent, schedule, horizon);
  out.stupid = certify_less(Interval::of(out.stupid_agent), shifted(Interval::of(out.lower), eps));

  out.user_policy = user_policy.name();
  out.smart_prior = make_emulation_mixture(user_policy, xi, eps, schedule, horizon);
  out.user_score = upsilon(*out.smart_prior.mixture, user_policy, schedule, horizon);
  out.smart_upper = optimal_value(out.smart_prior.mixture, History{}, schedule, horizon);
  out.smart = certify_less(shifted(Interval::of(out.smart_upper), -eps), Interval::of(out.user_score));

  const Policy aixi = optimal_policy(xi, schedule, horizon, tb);
  out.aixi_first = aixi(History{});
  out.rigged = make_adversarial_gate_mixture(out.aixi_first, xi, eps);
  out.aixi_score = upsilon(*out.rigged, aixi, schedule, horizon);
  out.rigged_upper = optimal_value(out.rigged, History{}, schedule, horizon);
  out.aixi_low = certify_less_equal(Interval::of(out.aixi_score), Interval::point(eps));
  out.rigged_high = certify_less_equal(Interval::point(1 - eps), Interval::of(out.rigged_upper));
  return out;
}

}  // namespace aixilab
