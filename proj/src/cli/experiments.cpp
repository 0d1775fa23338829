#include "aixilab/cli/experiments.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "aixilab/intelligence.hpp"
#include "aixilab/parallel.hpp"
#include "aixilab/pareto.hpp"
#include "aixilab/priors.hpp"

namespace aixilab::cli {

namespace {

Interval iv(const ValueResult& v) { return Interval::of(v); }
Interval pt(const Rational& r) { return Interval::point(r); }

std::string actions_str(const std::vector<Action>& actions) {
  std::string out = "{";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(actions[i].index);
  }
  return out + "}";
}

json values_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(number(v));
  return out;
}

std::size_t param_size(const ExperimentConfig& c, const std::string& key, std::size_t fallback) {
  return c.has_param(key) ? c.param(key).as_size() : fallback;
}

Rational param_rational(const ExperimentConfig& c, const std::string& key, const Rational& fallback) {
  return c.has_param(key) ? c.param(key).as_rational() : fallback;
}

bool param_bool(const ExperimentConfig& c, const std::string& key, bool fallback) {
  return c.has_param(key) ? c.param(key).as_bool() : fallback;
}

Policy param_policy(const ExperimentConfig& c, const std::string& key, const json& fallback) {
  if (c.has_param(key)) return parse_policy(c.param(key), c.alphabet, &c);
  return parse_policy(Field(fallback, "params." + key), c.alphabet, &c);
}

/// Decision nodes default to the schedule's lifetime (capped by the
/// horizon) since nodes past it carry no value.
std::size_t node_depth(const ExperimentConfig& c, std::size_t fallback) {
  if (c.has_param("depth")) return c.param("depth").as_size();
  if (auto life = c.schedule.lifetime()) return std::min(*life, c.horizon);
  return fallback;
}

bool live(const DiscountSchedule& s, const History& h) { return s.big_gamma(h.size() + 1) > 0; }

/// Is `expected` the unique maximizer? Needs gap > bound unless the search
/// was exact.
Outcome certify_unique(const ActionChoice& c, Action expected) {
  const bool unique = c.tie_set.size() == 1 && c.tie_set[0] == expected;
  if (c.truncation_bound == 0) return unique ? Outcome::holds_exactly : Outcome::falsified;
  if (unique && c.gap > c.truncation_bound) return Outcome::holds_certified;
  const Rational best = *std::max_element(c.action_values.begin(), c.action_values.end());
  if (best - c.action_values[expected.index] > c.truncation_bound) return Outcome::falsified;
  return Outcome::uncertifiable;
}

std::vector<std::string> choice_row(const History& h, const ActionChoice& c) {
  std::vector<std::string> row = {h.str(), std::to_string(c.action.index), actions_str(c.tie_set),
                                  to_string(c.gap), to_string(c.truncation_bound)};
  for (const auto& v : c.action_values) row.push_back(to_string(v));
  return row;
}

std::vector<std::string> choice_header(const Alphabet& alphabet) {
  std::vector<std::string> header = {"history", "action", "tie_set", "gap", "bound"};
  for (std::size_t a = 0; a < alphabet.num_actions(); ++a) header.push_back("value_a" + std::to_string(a));
  return header;
}

json choice_json(const History& h, const ActionChoice& c) {
  return {{"history", h.str()},
          {"action", c.action.index},
          {"tie_set", actions_str(c.tie_set)},
          {"gap", number(c.gap)},
          {"action_values", values_json(c.action_values)},
          {"bound", to_string(c.truncation_bound)}};
}

void run_value(const ExperimentConfig& c, Report& r) {
  const Policy pi = param_policy(c, "policy", {{"kind", "constant"}, {"action", 0}});
  const History h = c.has_param("history") ? parse_history(c.param("history"), c.alphabet) : History{};
  const ValueResult v = value(pi, *c.xi, h, c.schedule, c.horizon);
  r.results()["policy"] = pi.name();
  r.results()["history"] = h.str();
  r.results()["value"] = number(v);
  r.check("0 <= V", certify_less_equal(pt(0), iv(v)), pt(0), "<=", iv(v));
  r.check("V <= 1", certify_less_equal(iv(v), pt(1)), iv(v), "<=", pt(1));

  // Value is linear in the mixture: V_xi = sum_nu w_nu(h) V_nu, compared on
  // identically truncated searches.
  const Posterior post = posterior(*c.xi, h);
  const ValueResult vt = value(pi, *c.xi, h, c.schedule, c.horizon, Tail::truncate);
  Rational sum = 0;
  r.table().header = {"environment", "weight", "posterior", "value", "bound"};
  json comps = json::array();
  for (std::size_t i = 0; i < c.xi->components().size(); ++i) {
    const auto& comp = c.xi->components()[i];
    std::optional<ValueResult> vi;
    if (post.weights[i] > 0) {
      vi = value(pi, *comp.env, h, c.schedule, c.horizon);
      sum += post.weights[i] * value(pi, *comp.env, h, c.schedule, c.horizon, Tail::truncate).value;
    }
    comps.push_back({{"environment", comp.env->name()},
                     {"weight", number(comp.weight)},
                     {"posterior", number(post.weights[i])},
                     {"value", vi ? number(*vi) : json(nullptr)}});
    r.table().rows.push_back({comp.env->name(), to_string(comp.weight), to_string(post.weights[i]),
                              vi ? to_string(vi->value) : "", vi ? to_string(vi->truncation_bound) : ""});
  }
  r.results()["components"] = std::move(comps);
  r.table().rows.push_back({c.xi->name(), to_string(c.xi->total_weight()), "1", to_string(v.value),
                            to_string(v.truncation_bound)});
  r.check("value linear in the mixture", vt.value == sum ? Outcome::holds_exactly : Outcome::falsified,
          pt(vt.value), "==", pt(sum));
}

void run_optimal(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const std::size_t depth = node_depth(c, 2);
  const auto nodes = reachable_histories(*c.xi, depth);
  std::vector<ActionChoice> best(nodes.size());
  std::vector<ValueResult> worst(nodes.size());
  parallel_for(nodes.size(), jobs, [&](std::size_t i) {
    best[i] = optimal_action(c.xi, nodes[i], c.schedule, c.horizon, c.tie_break);
    worst[i] = pessimal_value(c.xi, nodes[i], c.schedule, c.horizon);
  });
  r.table().header = choice_header(c.alphabet);
  json out = json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    json node = choice_json(nodes[i], best[i]);
    node["pessimal_value"] = number(worst[i]);
    out.push_back(std::move(node));
    r.table().rows.push_back(choice_row(nodes[i], best[i]));
    const Interval hi = {best[i].action_values[best[i].action.index],
                         best[i].action_values[best[i].action.index] + best[i].truncation_bound};
    r.check("pessimal <= optimal at " + nodes[i].str(), certify_less_equal(iv(worst[i]), hi), iv(worst[i]),
            "<=", hi);
  }
  r.results()["nodes"] = std::move(out);
}

void run_dogmatic(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const Policy pi = param_policy(c, "policy", {{"kind", "constant"}, {"action", 0}});
  const Rational eps = param_rational(c, "eps", Rational(1, 10));
  const std::size_t depth = node_depth(c, 4);
  const MixturePtr prior = make_dogmatic_mixture(pi, c.xi, eps);
  const Rational off_bound = eps / (1 + eps);
  const Rational ratio = 2 / (1 + eps);

  std::vector<History> nodes;
  for (auto& h : on_policy_histories(pi, *c.xi, depth)) {
    if (live(c.schedule, h)) nodes.push_back(std::move(h));
  }
  std::vector<ValueResult> vs(nodes.size());
  std::vector<ActionChoice> choices(nodes.size());
  std::vector<Posterior> posts(nodes.size());
  parallel_for(nodes.size(), jobs, [&](std::size_t i) {
    vs[i] = value(pi, *c.xi, nodes[i], c.schedule, c.horizon);
    choices[i] = optimal_action(prior, nodes[i], c.schedule, c.horizon, c.tie_break);
    posts[i] = posterior(*prior, nodes[i]);
  });

  r.table().header = choice_header(c.alphabet);
  r.table().header.insert(r.table().header.begin() + 1, {"policy_action", "policy_value"});
  json out = json::array();
  std::size_t followed = 0;
  std::size_t protected_nodes = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const History& h = nodes[i];
    const ActionChoice& ch = choices[i];
    const Action a = pi(h);
    json node = choice_json(h, ch);
    node["policy_action"] = a.index;
    node["policy_value"] = number(vs[i]);
    const Outcome above = certify_less(pt(eps), iv(vs[i]));
    node["protected"] = holds(above);
    if (holds(above)) {
      ++protected_nodes;
      const Outcome unique = certify_unique(ch, a);
      if (holds(unique)) ++followed;
      r.check("unique optimal action is pi(h) at " + h.str(), unique,
              {{"policy_action", a.index}, {"tie_set", actions_str(ch.tie_set)}, {"gap", number(ch.gap)},
               {"bound", to_string(ch.truncation_bound)}});
      for (std::size_t b = 0; b < c.alphabet.num_actions(); ++b) {
        if (b == a.index) continue;
        const Interval off = {ch.action_values[b], ch.action_values[b] + ch.truncation_bound};
        r.check("off-policy value <= eps/(1+eps) at " + h.str() + " action " + std::to_string(b),
                certify_less_equal(off, pt(off_bound)), off, "<=", pt(off_bound));
      }
    }
    // The dogmatic component is listed first in the prior.
    const Rational w = posts[i].weights[0] / prior->components()[0].weight;
    node["dogmatic_posterior_ratio"] = number(w);
    r.check("posterior ratio 2/(1+eps) at " + h.str(), w == ratio ? Outcome::holds_exactly : Outcome::falsified,
            pt(w), "==", pt(ratio));
    out.push_back(std::move(node));
    auto row = choice_row(h, ch);
    row.insert(row.begin() + 1, {std::to_string(a.index), to_string(vs[i].value)});
    r.table().rows.push_back(std::move(row));
  }
  r.results()["policy"] = pi.name();
  r.results()["eps"] = number(eps);
  r.results()["prior"] = prior->name();
  r.results()["nodes"] = std::move(out);
  r.results()["protected_nodes"] = protected_nodes;
  r.results()["policy_followed_at"] = followed;
}

void run_indifference(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const auto life = c.schedule.lifetime();
  const std::size_t m = c.has_param("m") ? c.param("m").as_size() : (life ? *life : 0);
  if (m == 0) throw ConfigError("params.m", "required unless the schedule has a finite lifetime");
  const MixturePtr prior = make_indifference_mixture(c.xi, m);
  std::vector<History> nodes;
  for (auto& h : reachable_histories(*prior, std::min(m, c.horizon))) {
    if (live(c.schedule, h)) nodes.push_back(std::move(h));
  }
  std::vector<ActionChoice> choices(nodes.size());
  parallel_for(nodes.size(), jobs, [&](std::size_t i) {
    choices[i] = optimal_action(prior, nodes[i], c.schedule, c.horizon, c.tie_break);
  });
  r.table().header = choice_header(c.alphabet);
  json out = json::array();
  std::size_t all_tied = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ActionChoice& ch = choices[i];
    const bool tied = ch.tie_set.size() == c.alphabet.num_actions();
    Outcome o = tied ? Outcome::holds_exactly : Outcome::falsified;
    if (ch.truncation_bound != 0) o = tied ? Outcome::uncertifiable : o;
    if (holds(o)) ++all_tied;
    r.check("tie set is A at " + nodes[i].str(), o,
            {{"tie_set", actions_str(ch.tie_set)}, {"bound", to_string(ch.truncation_bound)}});
    out.push_back(choice_json(nodes[i], ch));
    r.table().rows.push_back(choice_row(nodes[i], ch));
  }
  r.results()["m"] = m;
  r.results()["prior"] = prior->name();
  r.results()["components"] = prior->components().size();
  r.results()["decision_nodes"] = nodes.size();
  r.results()["nodes_all_tied"] = all_tied;
  r.results()["nodes"] = std::move(out);
}

std::vector<EnvPtr> test_class(const ExperimentConfig& c) {
  std::vector<EnvPtr> envs;
  if (c.has_param("test_class")) {
    const Field f = c.param("test_class");
    for (std::size_t i = 0; i < f.size(); ++i) envs.push_back(parse_env(f.at(i), c.alphabet));
  } else {
    for (const auto& comp : c.xi->components()) envs.push_back(comp.env);
  }
  return envs;
}

void run_emulation(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const Policy pi = param_policy(c, "policy", {{"kind", "constant"}, {"action", 0}});
  const Rational eps = param_rational(c, "eps", Rational(1, 10));
  const EmulationMixture em = make_emulation_mixture(pi, c.xi, eps, c.schedule, c.horizon);
  const Policy star = optimal_policy(em.mixture, c.schedule, c.horizon, c.tie_break);
  const auto envs = test_class(c);
  std::vector<ValueResult> a(envs.size());
  std::vector<ValueResult> b(envs.size());
  parallel_for(envs.size(), jobs, [&](std::size_t i) {
    a[i] = value(star, *envs[i], History{}, c.schedule, c.horizon);
    b[i] = value(pi, *envs[i], History{}, c.schedule, c.horizon);
  });
  r.table().header = {"environment", "emulator_value", "emulator_bound", "policy_value", "policy_bound"};
  json out = json::array();
  for (std::size_t i = 0; i < envs.size(); ++i) {
    const Interval diff = magnitude(difference(iv(a[i]), iv(b[i])));
    r.check("|V(emulator) - V(pi)| < eps in " + envs[i]->name(), certify_less(diff, pt(eps)), diff, "<",
            pt(eps));
    out.push_back({{"environment", envs[i]->name()}, {"emulator", number(a[i])}, {"policy", number(b[i])}});
    r.table().rows.push_back({envs[i]->name(), to_string(a[i].value), to_string(a[i].truncation_bound),
                              to_string(b[i].value), to_string(b[i].truncation_bound)});
  }
  r.results()["policy"] = pi.name();
  r.results()["eps"] = number(eps);
  r.results()["k"] = em.k;
  r.results()["eps_prime"] = number(em.eps_prime);
  r.results()["min_on_policy_value"] = number(em.min_on_policy_value);
  r.results()["histories_checked"] = em.histories_checked;
  r.results()["environments"] = std::move(out);
}

std::vector<Policy> experiment_policies(const ExperimentConfig& c, std::size_t default_samples,
                                        std::size_t default_depth) {
  std::vector<Policy> out;
  if (c.has_param("policies")) {
    const Field f = c.param("policies");
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(parse_policy(f.at(i), c.alphabet, &c));
  }
  const std::size_t n = param_size(c, "samples", default_samples);
  const std::size_t depth = param_size(c, "policy_depth", default_depth);
  if (depth > 6) throw ConfigError("params.policy_depth", "at most 6");
  for (auto& p : sample_policies(c.alphabet, n, depth, c.seed)) out.push_back(std::move(p));
  return out;
}

void run_intelligence(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const auto policies = experiment_policies(c, 100, 3);
  const UpsilonBounds bounds = upsilon_bounds(c.xi, c.schedule, c.horizon);
  const std::optional<std::size_t> k =
      c.has_param("truncate_k") ? std::optional(c.param("truncate_k").as_size()) : std::nullopt;
  const Rational density_bound =
      k ? c.schedule.big_gamma(*k + 1) / c.schedule.big_gamma(1) : Rational(0);

  std::vector<ValueResult> scores(policies.size());
  std::vector<ValueResult> truncated(policies.size());
  parallel_for(policies.size(), jobs, [&](std::size_t i) {
    scores[i] = upsilon(*c.xi, policies[i], c.schedule, c.horizon);
    if (k) truncated[i] = upsilon(*c.xi, truncate_policy(policies[i], *k, Action{0}), c.schedule, c.horizon);
  });

  r.results()["lower"] = number(bounds.lower);
  r.results()["upper"] = number(bounds.upper);
  r.check("0 < lower bound", certify_less(pt(0), iv(bounds.lower)), pt(0), "<", iv(bounds.lower));
  r.check("upper bound < 1", certify_less(iv(bounds.upper), pt(1)), iv(bounds.upper), "<", pt(1));
  r.table().header = {"policy", "upsilon", "bound"};
  if (k) r.table().header.insert(r.table().header.end(), {"truncated_upsilon", "truncated_bound"});
  json out = json::array();
  for (std::size_t i = 0; i < policies.size(); ++i) {
    const std::string& name = policies[i].name();
    r.check("lower <= upsilon(" + name + ")", certify_less_equal(iv(bounds.lower), iv(scores[i])),
            iv(bounds.lower), "<=", iv(scores[i]));
    r.check("upsilon(" + name + ") <= upper", certify_less_equal(iv(scores[i]), iv(bounds.upper)),
            iv(scores[i]), "<=", iv(bounds.upper));
    json entry = {{"policy", name}, {"upsilon", number(scores[i])}};
    std::vector<std::string> row = {name, to_string(scores[i].value), to_string(scores[i].truncation_bound)};
    if (k) {
      const Interval diff = magnitude(difference(iv(scores[i]), iv(truncated[i])));
      r.check("|upsilon - upsilon(truncated)| <= Gamma_{k+1}/Gamma_1 for " + name,
              certify_less_equal(diff, pt(density_bound)), diff, "<=", pt(density_bound));
      entry["truncated"] = number(truncated[i]);
      row.insert(row.end(), {to_string(truncated[i].value), to_string(truncated[i].truncation_bound)});
    }
    out.push_back(std::move(entry));
    r.table().rows.push_back(std::move(row));
  }
  if (k) {
    r.results()["truncate_k"] = *k;
    r.results()["density_bound"] = number(density_bound);
  }
  r.results()["policies"] = std::move(out);
}

void run_gap(const ExperimentConfig& c, Report& r) {
  const Action lucky = c.alphabet.action(param_size(c, "lucky", 0));
  Rational gate_w(999, 1000);
  Rational base_w(1, 1000);
  if (c.has_param("weights")) {
    const Field w = c.param("weights");
    if (w.size() != 2) w.fail("expected [gate weight, class weight]");
    gate_w = w.at(std::size_t{0}).as_rational();
    base_w = w.at(1).as_rational();
  }
  const auto samples = experiment_policies(c, 20, 3);
  const GapReport g = intelligence_gap_experiment(lucky, gate_w, base_w, c.xi, c.schedule, c.horizon, samples);

  r.results()["mixture"] = g.mixture->name();
  r.results()["degenerate"] = g.degenerate;
  r.results()["low"] = number(g.low);
  r.results()["high"] = number(g.high);
  json ranges = json::array();
  for (const auto& range : g.ranges) {
    ranges.push_back({{"first_action", range.first.index},
                      {"lucky", range.lucky},
                      {"lowest", number(range.lowest)},
                      {"highest", number(range.highest)}});
  }
  r.results()["first_action_ranges"] = std::move(ranges);
  r.check("no intelligence score in [low, high]", g.empty_interval,
          {{"low", number(g.low)}, {"high", number(g.high)}});
  r.table().header = {"policy", "first_action", "upsilon", "bound", "side"};
  json out = json::array();
  for (const auto& s : g.samples) {
    const bool lucky_first = s.first == lucky;
    r.check("upsilon(" + s.policy + ") " + (lucky_first ? "> high" : "< low"), s.side,
            lucky_first ? pt(g.high) : iv(s.score), "<", lucky_first ? iv(s.score) : pt(g.low));
    out.push_back({{"policy", s.policy}, {"first_action", s.first.index}, {"upsilon", number(s.score)}});
    r.table().rows.push_back({s.policy, std::to_string(s.first.index), to_string(s.score.value),
                              to_string(s.score.truncation_bound), lucky_first ? "high" : "low"});
  }
  r.results()["samples"] = std::move(out);
}

void run_stupidity(const ExperimentConfig& c, Report& r) {
  const Rational eps = param_rational(c, "eps", Rational(1, 8));
  const Policy user = param_policy(c, "policy", {{"kind", "constant"}, {"action", 0}});
  const StupidityReport s = stupidity_experiment(c.xi, eps, c.schedule, c.horizon, c.tie_break, user);
  const Rational agreement_bound = c.schedule.big_gamma(s.truncation_depth + 1) / c.schedule.big_gamma(1);
  auto shift = [](const ValueResult& v, const Rational& by) {
    return Interval{v.value + by, v.value + v.truncation_bound + by};
  };

  r.check("truncated minimizer within Gamma_{k+1}/Gamma_1 of the lower bound", s.density,
          iv(s.near_pessimal), "<=", shift(s.lower, agreement_bound));
  r.check("optimal agent for the stupid prior scores < lower + eps", s.stupid, iv(s.stupid_agent), "<",
          shift(s.lower, eps));
  r.check("user policy scores > upper - eps under its own prior", s.smart, shift(s.smart_upper, -eps), "<",
          iv(s.user_score));
  r.check("fixed optimal agent scores <= eps under the rigged prior", s.aixi_low, iv(s.aixi_score), "<=",
          pt(eps));
  r.check("rigged prior's upper bound >= 1 - eps", s.rigged_high, pt(1 - eps), "<=", iv(s.rigged_upper));

  r.results()["eps"] = number(eps);
  r.results()["truncation_depth"] = s.truncation_depth;
  r.results()["lower"] = number(s.lower);
  r.results()["near_pessimal"] = number(s.near_pessimal);
  r.results()["stupid_prior"] = {{"k", s.stupid_prior.k}, {"eps_prime", number(s.stupid_prior.eps_prime)}};
  r.results()["stupid_agent"] = number(s.stupid_agent);
  r.results()["user_policy"] = s.user_policy;
  r.results()["smart_prior"] = {{"k", s.smart_prior.k}, {"eps_prime", number(s.smart_prior.eps_prime)}};
  r.results()["user_score"] = number(s.user_score);
  r.results()["smart_upper"] = number(s.smart_upper);
  r.results()["aixi_first_action"] = s.aixi_first.index;
  r.results()["aixi_score"] = number(s.aixi_score);
  r.results()["rigged_upper"] = number(s.rigged_upper);
  r.table().header = {"quantity", "value", "bound"};
  for (const auto& [name, v] : std::vector<std::pair<std::string, ValueResult>>{
           {"lower", s.lower},
           {"near_pessimal", s.near_pessimal},
           {"stupid_agent", s.stupid_agent},
           {"user_score", s.user_score},
           {"smart_upper", s.smart_upper},
           {"aixi_score", s.aixi_score},
           {"rigged_upper", s.rigged_upper}}) {
    r.table().rows.push_back({name, to_string(v.value), to_string(v.truncation_bound)});
  }
}

void run_pareto(const ExperimentConfig& c, Report& r, std::size_t jobs) {
  const PolicySpace space(c.alphabet, param_size(c, "depth", 2),
                          c.alphabet.action(param_size(c, "fallback", 0)));
  r.results()["policies"] = space.size();
  r.results()["histories"] = space.histories().size();

  if (param_bool(c, "buddy_sweep", true)) {
    const auto cases = buddy_gap_sweep(space, c.schedule, jobs);
    std::size_t matched = 0;
    json mismatch = nullptr;
    for (const auto& k : cases) {
      if (k.result.matches) {
        ++matched;
      } else if (mismatch.is_null()) {
        mismatch = {{"pi", k.pi}, {"pi_tilde", k.pi_tilde}, {"history", k.sep.history.str()},
                    {"gap", number(k.result.gap)}, {"expected", number(k.result.expected)}};
      }
    }
    json detail = {{"pairs", cases.size()}, {"matched", matched}};
    if (!mismatch.is_null()) detail["first_mismatch"] = mismatch;
    r.check("buddy gap equals Gamma_k for every disagreeing pair",
            matched == cases.size() ? Outcome::holds_exactly : Outcome::falsified, std::move(detail));
    r.results()["buddy_sweep_pairs"] = cases.size();
  }

  if (!c.schedule.lifetime()) {
    r.results()["triviality"] = "skipped: needs a finite-lifetime schedule";
    return;
  }
  std::vector<EnvPtr> base;
  for (const auto& comp : c.xi->components()) base.push_back(comp.env);
  const ParetoReport p = verify_pareto_triviality(base, space, c.schedule, true, jobs);

  std::size_t optimal = std::count(p.pareto_optimal.begin(), p.pareto_optimal.end(), true);
  r.check("every policy Pareto optimal in the buddy-augmented class",
          p.all_pareto_optimal ? Outcome::holds_exactly : Outcome::falsified,
          {{"pareto_optimal", optimal}, {"policies", space.size()}, {"class_size", p.envs.size()}});
  bool gaps = std::all_of(p.defenses.begin(), p.defenses.end(), [](const Defense& d) { return d.gap.matches; });
  r.check("every defending buddy opens a gap of Gamma_k", gaps ? Outcome::holds_exactly : Outcome::falsified,
          {{"defenses", p.defenses.size()}});

  json defenses = json::array();
  for (const auto& d : p.defenses) {
    defenses.push_back({{"defended", d.defended},
                        {"attacker", d.attacker},
                        {"witness", p.envs[d.witness]->name()},
                        {"separating_history", d.sep.history.str()},
                        {"k", d.sep.k},
                        {"buddy", d.buddy},
                        {"gap", number(d.gap.gap)}});
  }
  r.results()["base_class_size"] = p.base_size;
  r.results()["augmented_class_size"] = p.envs.size();
  r.results()["rounds"] = p.rounds;
  r.results()["defenses"] = std::move(defenses);

  if (param_bool(c, "control", true)) {
    const ParetoReport ctl = verify_pareto_triviality(base, space, c.schedule, false, jobs);
    const std::size_t dominated = std::count(ctl.pareto_optimal.begin(), ctl.pareto_optimal.end(), false);
    r.check("without buddies some policy is dominated", dominated > 0 ? Outcome::holds_exactly : Outcome::falsified,
            {{"dominated", dominated}});
    r.results()["control_dominated"] = dominated;
  }

  r.table().header = {"attacker"};
  for (std::size_t j = 0; j < space.size(); ++j) r.table().header.push_back("space[" + std::to_string(j) + "]");
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::vector<std::string> row = {"space[" + std::to_string(i) + "]"};
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(i == j ? "-" : to_string(p.matrix[i][j]));
    r.table().rows.push_back(std::move(row));
  }
}

}  // namespace

std::vector<History> reachable_histories(const Environment& env, std::size_t depth) {
  std::vector<History> out;
  if (depth == 0 || joint_prob(env, History{}) == 0) return out;
  std::deque<History> queue{History{}};
  while (!queue.empty()) {
    History h = std::move(queue.front());
    queue.pop_front();
    if (h.size() + 1 < depth) {
      for (std::size_t a = 0; a < env.alphabet().num_actions(); ++a) {
        const Distribution d = env.step(h, Action{a});
        for (PerceptId e = 0; e < d.size(); ++e) {
          if (d[e] > 0) queue.push_back(h.extended(Action{a}, e));
        }
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Policy> sample_policies(const Alphabet& alphabet, std::size_t count, std::size_t depth,
                                    std::uint64_t seed) {
  std::vector<Policy> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + i;
    out.push_back(random_tabular_policy(alphabet, depth, s, "sample[" + std::to_string(i) + "]"));
  }
  return out;
}

Report run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  Report report(config.experiment);
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  try {
    const std::string& e = config.experiment;
    if (e == "value") run_value(config, report);
    else if (e == "optimal") run_optimal(config, report, jobs);
    else if (e == "dogmatic") run_dogmatic(config, report, jobs);
    else if (e == "indifference") run_indifference(config, report, jobs);
    else if (e == "emulation") run_emulation(config, report, jobs);
    else if (e == "intelligence") run_intelligence(config, report, jobs);
    else if (e == "gap") run_gap(config, report);
    else if (e == "stupidity") run_stupidity(config, report);
    else if (e == "pareto") run_pareto(config, report, jobs);
    else throw ConfigError("experiment", "unknown experiment '" + e + "'");
  } catch (const DomainError& err) {
    throw ConfigError("params", err.what());
  } catch (const MeasureZeroHistory& err) {
    throw ConfigError("params", err.what());
  }
  return report;
}

json zoo_json() {
  json out = json::array();
  for (const auto& z : zoo_catalog()) out.push_back({{"kind", z.kind}, {"role", z.role}, {"params", z.params}});
  return out;
}

std::string zoo_text() {
  std::ostringstream out;
  for (const auto& z : zoo_catalog()) {
    out << z.kind << "  " << z.role << "\n";
    for (auto& [k, v] : z.params.items()) out << "    " << k << ": " << v.get<std::string>() << "\n";
  }
  return out.str();
}

}  // namespace aixilab::cli
