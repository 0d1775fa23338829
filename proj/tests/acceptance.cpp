// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "aixilab/cli/experiments.hpp"
#include "aixilab/intelligence.hpp"
#include "aixilab/pareto.hpp"
#include "support.hpp"

using namespace aixilab;

namespace {

const Alphabet kBin = Alphabet::binary();
const TieBreak kLow = TieBreak::lowest_index();

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

MixturePtr three_way(const std::vector<Rational>& w) {
  return make_mixture(kBin, {{w[0], make_bernoulli_bandit(kBin, {Rational(3, 4), Rational(1, 4)})},
                             {w[1], make_heaven(kBin)},
                             {w[2], make_hell(kBin)}},
                      "xi");
}

MixturePtr standard() { return three_way({Rational(1, 2), Rational(1, 4), Rational(1, 4)}); }

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

Verdict indifference() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = 3;
  const auto s = DiscountSchedule::finite_lifetime(m);
  const MixturePtr prior = make_indifference_mixture(three_way({Rational(1, 3), Rational(1, 3), Rational(1, 3)}), m);
  std::size_t nodes = 0;
  bool ok = true;
  for (const auto& h : cli::reachable_histories(*prior, m)) {
    ok = ok && optimal_action(prior, h, s, m, kLow).tie_set.size() == kBin.num_actions();
    ++nodes;
  }
  const double t = seconds_since(start);
  ok = ok && nodes <= 21 && t < 1;
  return {ok, std::to_string(nodes) + " decision nodes, tie set = A at all, " + fmt(t)};
}

Verdict dogmatic() {
  const auto start = std::chrono::steady_clock::now();
  const MixturePtr xi = standard();
  const Policy pi = Policy::constant(Action{1});
  const Rational eps(1, 10);
  const auto s = DiscountSchedule::finite_lifetime(4);
  const MixturePtr prior = make_dogmatic_mixture(pi, xi, eps);
  std::size_t nodes = 0;
  bool ok = true;
  for (const auto& h : on_policy_histories(pi, *xi, 4)) {
    if (value(pi, *xi, h, s, 4).value <= eps) continue;
    const ActionChoice c = optimal_action(prior, h, s, 4, kLow);
    ok = ok && c.tie_set == std::vector<Action>{pi(h)};
    for (std::size_t a = 0; a < c.action_values.size(); ++a) {
      if (Action{a} != pi(h)) ok = ok && c.action_values[a] <= Rational(1, 11);
    }
    ++nodes;
  }
  const double t = seconds_since(start);
  ok = ok && nodes > 0 && t < 5;
  return {ok, std::to_string(nodes) + " histories with V > 1/10, unique pi(h), off-policy <= 1/11, " + fmt(t)};
}

Verdict posterior_constancy() {
  const MixturePtr xi = standard();
  const Policy pi = Policy::constant(Action{1});
  const Rational eps(1, 10);
  const MixturePtr prior = make_dogmatic_mixture(pi, xi, eps);
  const Rational w0 = prior->components()[0].weight;
  std::size_t n = 0;
  bool ok = true;
  for (const auto& h : on_policy_histories(pi, *xi, 5)) {
    ok = ok && posterior(*prior, h).weights[0] / w0 == 2 / (1 + eps);
    ++n;
  }
  return {ok && n > 0, std::to_string(n) + " on-policy histories of length <= 4, ratio 2/(1+eps) = 20/11"};
}

Verdict emulation() {
  const MixturePtr xi = standard();
  const Policy pi = Policy::constant(Action{1});
  const Rational eps(1, 10);
  const auto s = DiscountSchedule::finite_lifetime(4);
  const EmulationMixture em = make_emulation_mixture(pi, xi, eps, s, 4);
  const Policy star = optimal_policy(em.mixture, s, 4, kLow);
  const std::vector<EnvPtr> test = {make_heaven(kBin), make_hell(kBin),
                                    make_bernoulli_bandit(kBin, {Rational(3, 4), Rational(1, 4)}),
                                    make_bernoulli_bandit(kBin, {Rational(1, 4), Rational(3, 4)}),
                                    make_gate_env(kBin, Action{0})};
  std::vector<Outcome> outcomes;
  Rational worst = 0;
  for (const auto& nu : test) {
    const Interval d = magnitude(difference(Interval::of(value(star, *nu, History{}, s, 4)),
                                            Interval::of(value(pi, *nu, History{}, s, 4))));
    outcomes.push_back(certify_less(d, Interval::point(eps)));
    worst = std::max(worst, d.hi);
  }
  return {holds(combine(outcomes)), "5 environments, max |dV| <= " + to_string(worst) + " < 1/10"};
}

Verdict intelligence_bounds() {
  const MixturePtr xi = standard();
  const auto s = DiscountSchedule::finite_lifetime(4);
  const UpsilonBounds b = upsilon_bounds(xi, s, 4);
  bool ok = b.lower.truncation_bound == 0 && b.upper.truncation_bound == 0 && 0 < b.lower.value &&
            b.upper.value < 1;
  for (const auto& p : cli::sample_policies(kBin, 100, 4, 1)) {
    const ValueResult u = upsilon(*xi, p, s, 4);
    ok = ok && u.truncation_bound == 0 && b.lower.value <= u.value && u.value <= b.upper.value;
  }
  return {ok, "100 policies, 0 < " + to_string(b.lower.value) + " <= U <= " + to_string(b.upper.value) + " < 1"};
}

Verdict density() {
  const auto start = std::chrono::steady_clock::now();
  const MixturePtr xi = standard();
  const auto s = DiscountSchedule::geometric(Rational(1, 2));
  const std::size_t horizon = 8;
  std::vector<Outcome> outcomes;
  for (const auto& p : cli::sample_policies(kBin, 100, 6, 11)) {
    const Policy cut = truncate_policy(p, 4, Action{0});
    const Interval d = magnitude(
        difference(Interval::of(upsilon(*xi, p, s, horizon)), Interval::of(upsilon(*xi, cut, s, horizon))));
    outcomes.push_back(certify_less_equal(d, Interval::point(Rational(1, 16))));
  }
  return {holds(combine(outcomes)), "100 policies, |U(pi) - U(truncate(pi, 4))| <= 1/16 (" +
                                        to_string(combine(outcomes)) + "), " + fmt(seconds_since(start))};
}

Verdict gap() {
  const auto s = DiscountSchedule::finite_lifetime(4);
  const GapReport g = intelligence_gap_experiment(Action{0}, Rational(999, 1000), Rational(1, 1000), standard(), s, 4,
                                                  cli::sample_policies(kBin, 100, 4, 3));
  bool ok = !g.degenerate && g.low == Rational(1, 1000) && g.high == Rational(999, 1000) &&
            holds(g.empty_interval) && g.ranges.size() == 2;
  for (const auto& sample : g.samples) ok = ok && holds(sample.side);
  return {ok, "[1/1000, 999/1000] empty over both first actions; 100 samples on their side"};
}

Verdict stupidity() {
  const auto s = DiscountSchedule::finite_lifetime(4);
  const StupidityReport r = stupidity_experiment(standard(), Rational(1, 8), s, 4, kLow, Policy::constant(Action{1}));
  const bool ok = holds(r.density) && holds(r.stupid) && holds(r.smart) && holds(r.aixi_low) && holds(r.rigged_high);
  return {ok, "stupid " + to_string(r.stupid_agent.value) + " < " + to_string(r.lower.value) + " + 1/8; smart " +
                  to_string(r.user_score.value) + " > " + to_string(r.smart_upper.value) + " - 1/8; AIXI " +
                  to_string(r.aixi_score.value) + " <= 1/8"};
}

Verdict buddy_gap() {
  const auto start = std::chrono::steady_clock::now();
  const PolicySpace space(kBin, 2);
  bool ok = space.size() == 32;
  std::size_t pairs = 0;
  for (const auto& s : {DiscountSchedule::finite_lifetime(3), DiscountSchedule::geometric(Rational(1, 2))}) {
    const auto cases = buddy_gap_sweep(space, s);
    for (const auto& c : cases) ok = ok && c.result.matches && c.result.gap == s.big_gamma(c.sep.k);
    ok = ok && !cases.empty() && cases.size() <= 992;
    pairs += cases.size();
  }
  const double t = seconds_since(start);
  return {ok && t < 30, std::to_string(pairs) + " ordered pairs over 2 schedules, gap = Gamma_k, " + fmt(t)};
}

Verdict pareto() {
  const auto s = DiscountSchedule::finite_lifetime(2);
  const PolicySpace space(kBin, 2);
  const std::vector<EnvPtr> base = {make_gate_env(kBin, Action{0}),
                                    make_bernoulli_bandit(kBin, {Rational(3, 4), Rational(1, 4)})};
  const ParetoReport control = verify_pareto_triviality(base, space, s, false);
  const ParetoReport closed = verify_pareto_triviality(base, space, s, true);
  std::size_t dominated = 0;
  for (bool p : control.pareto_optimal) dominated += p ? 0 : 1;
  bool ok = dominated > 0 && closed.all_pareto_optimal && closed.pareto_optimal.size() == 32;
  for (std::size_t i = 0; i < 32; ++i) {
    for (std::size_t j = 0; j < 32; ++j) ok = ok && closed.matrix[i][j] == Dominance::does_not_dominate;
  }
  return {ok, "control: " + std::to_string(dominated) + " dominated; with " +
                  std::to_string(closed.envs.size() - closed.base_size) + " buddies all 32 Pareto optimal"};
}

Verdict invariants() {
  std::mt19937_64 rng(2024);
  std::size_t agree = 0, linear = 0, oracle = 0;
  for (int i = 0; i < 1000; ++i) agree += support::agreement_bound_case(rng);
  for (int i = 0; i < 1000; ++i) linear += support::linearity_case(rng);
  for (int i = 0; i < 100; ++i) oracle += support::oracle_case(rng);
  return {agree == 1000 && linear == 1000 && oracle == 100,
          "agreement bound " + std::to_string(agree) + "/1000, linearity " + std::to_string(linear) +
              "/1000, oracle " + std::to_string(oracle) + "/100"};
}

Verdict determinism() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(AIXILAB_CONFIG_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  bool ok = !files.empty();
  for (const auto& f : files) {
    const cli::ExperimentConfig c = cli::load_config(f.string());
    const cli::Report one = cli::run_experiment(c, {1});
    const cli::Report four = cli::run_experiment(c, {4});
    ok = ok && one.to_json(c) == four.to_json(c) && cli::to_csv(one.table()) == cli::to_csv(four.table());
  }
  return {ok, std::to_string(files.size()) + " configs, jobs 1 vs 4 identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"indifference", indifference},
      {"dogmatic", dogmatic},
      {"posterior constancy", posterior_constancy},
      {"emulation", emulation},
      {"intelligence bounds", intelligence_bounds},
      {"density", density},
      {"gap", gap},
      {"stupidity", stupidity},
      {"buddy gap", buddy_gap},
      {"pareto triviality", pareto},
      {"randomized invariants", invariants},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << v.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
