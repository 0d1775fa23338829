#include "aixilab/cli/config.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "aixilab/zoo.hpp"

namespace aixilab::cli {

const std::vector<std::string> kExperiments = {"value",     "optimal",      "dogmatic",
                                               "indifference", "emulation", "intelligence",
                                               "gap",       "stupidity",    "pareto"};

bool Field::has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

Field Field::at(const std::string& key) const {
  if (!value_->is_object()) fail("expected an object");
  const std::string path = path_.empty() ? key : path_ + "." + key;
  auto it = value_->find(key);
  if (it == value_->end()) Field(*value_, path).fail("missing");
  return Field(*it, path);
}

Field Field::at(std::size_t index) const {
  if (!value_->is_array()) fail("expected an array");
  if (index >= value_->size()) fail("index " + std::to_string(index) + " out of range");
  return Field((*value_)[index], path_ + "[" + std::to_string(index) + "]");
}

std::size_t Field::size() const {
  if (!value_->is_array()) fail("expected an array");
  return value_->size();
}

std::string Field::as_string() const {
  if (!value_->is_string()) fail("expected a string");
  return value_->get<std::string>();
}

std::size_t Field::as_size() const {
  if (!value_->is_number_unsigned() && !(value_->is_number_integer() && value_->get<long long>() >= 0)) {
    fail("expected a nonnegative integer");
  }
  return value_->get<std::size_t>();
}

std::uint64_t Field::as_u64() const { return as_size(); }

bool Field::as_bool() const {
  if (!value_->is_boolean()) fail("expected true or false");
  return value_->get<bool>();
}

Rational Field::as_rational() const {
  if (value_->is_number_integer()) return Rational(value_->get<long long>());
  if (!value_->is_string()) fail("expected an exact rational written as \"p/q\"");
  try {
    return parse_rational(value_->get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

void Field::fail(const std::string& message) const { throw ConfigError(path_, message); }

namespace {

// Runs `body`, rethrowing library domain errors as config errors at `f`.
template <class Body>
auto guarded(const Field& f, Body&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    f.fail(e.what());
  }
}

Action parse_action(const Field& f, const Alphabet& alphabet) {
  const std::size_t i = f.as_size();
  if (i >= alphabet.num_actions()) f.fail("action " + std::to_string(i) + " not declared");
  return Action{i};
}

std::string kind_of(const Field& f) {
  if (f.value().is_string()) return f.as_string();
  return f.at("kind").as_string();
}

}  // namespace

Alphabet parse_alphabet(const Field& f) {
  if (f.value().is_string()) {
    if (f.as_string() == "binary") return Alphabet::binary();
    f.fail("unknown alphabet '" + f.as_string() + "'");
  }
  const std::size_t actions = f.at("actions").as_size();
  const Field ps = f.at("percepts");
  std::vector<Percept> percepts;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Field p = ps.at(i);
    if (p.size() != 2) p.fail("expected [observation, reward]");
    percepts.push_back({p.at(std::size_t{0}).as_size(), p.at(1).as_rational()});
  }
  return guarded(f, [&] { return Alphabet(actions, std::move(percepts)); });
}

DiscountSchedule parse_schedule(const Field& f) {
  const std::string kind = kind_of(f);
  return guarded(f, [&] {
    if (kind == "geometric") return DiscountSchedule::geometric(f.at("gamma").as_rational());
    if (kind == "finite_lifetime") return DiscountSchedule::finite_lifetime(f.at("m").as_size());
    if (kind == "table") {
      const Field w = f.at("weights");
      std::vector<Rational> weights;
      for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(w.at(i).as_rational());
      return DiscountSchedule::table(std::move(weights));
    }
    f.at("kind").fail("unknown discount kind '" + kind + "'");
  });
}

TieBreak parse_tie_break(const Field& f, const Alphabet& alphabet) {
  const std::string rule = f.value().is_string() ? f.as_string() : f.at("rule").as_string();
  if (rule == "lowest_index") return TieBreak::lowest_index();
  if (rule == "highest_index") return TieBreak::highest_index();
  if (rule == "fixed_preference") {
    const Field o = f.at("order");
    std::vector<Action> order;
    for (std::size_t i = 0; i < o.size(); ++i) order.push_back(parse_action(o.at(i), alphabet));
    return guarded(f, [&] { return TieBreak::fixed_preference(std::move(order)); });
  }
  f.fail("unknown tie-break rule '" + rule + "'");
}

History parse_history(const Field& f, const Alphabet& alphabet) {
  History h;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Field step = f.at(i);
    if (step.size() != 2) step.fail("expected [action, percept index]");
    const Action a = parse_action(step.at(std::size_t{0}), alphabet);
    const std::size_t e = step.at(1).as_size();
    if (e >= alphabet.num_percepts()) step.at(1).fail("percept index out of range");
    h.push_back({a, e});
  }
  return h;
}

EnvPtr parse_env(const Field& f, const Alphabet& alphabet) {
  const std::string kind = kind_of(f);
  return guarded(f, [&]() -> EnvPtr {
    if (kind == "heaven") return make_heaven(alphabet);
    if (kind == "hell") return make_hell(alphabet);
    if (kind == "gate") return make_gate_env(alphabet, parse_action(f.at("lucky"), alphabet));
    if (kind == "trapdoor") return make_trapdoor_env(alphabet, parse_action(f.at("doomed"), alphabet));
    if (kind == "bandit") {
      const Field m = f.at("means");
      std::vector<Rational> means;
      for (std::size_t i = 0; i < m.size(); ++i) means.push_back(m.at(i).as_rational());
      return make_bernoulli_bandit(alphabet, std::move(means));
    }
    if (kind == "seqpred") return make_sequence_prediction_env(alphabet, f.at("bits").as_string());
    if (kind == "coin") return make_coin_env(alphabet, f.at("p").as_rational());
    if (kind == "random") {
      const bool deficit = f.has("deficit") && f.at("deficit").as_bool();
      return make_random_env(alphabet, f.at("seed").as_u64(), deficit);
    }
    if (kind == "dogmatic") {
      return make_dogmatic_env(parse_policy(f.at("policy"), alphabet), parse_env(f.at("base"), alphabet));
    }
    if (kind == "buddy") {
      return make_buddy_env(alphabet, parse_history(f.at("script"), alphabet),
                            parse_action(f.at("pinned"), alphabet));
    }
    f.fail("unknown environment kind '" + kind + "' (see list-zoo)");
  });
}

Policy random_tabular_policy(const Alphabet& alphabet, std::size_t depth, std::uint64_t seed,
                             std::string name) {
  std::mt19937_64 rng(seed);
  std::map<History, Action> table;
  for (std::size_t len = 0; len < depth; ++len) {
    for (auto& h : all_histories(alphabet, len)) table.emplace(std::move(h), Action{rng() % alphabet.num_actions()});
  }
  return Policy::tabular(std::move(table), Action{0}, std::move(name));
}

Policy parse_policy(const Field& f, const Alphabet& alphabet, const ExperimentConfig* config) {
  const std::string kind = kind_of(f);
  if (kind == "constant") return Policy::constant(parse_action(f.at("action"), alphabet));
  if (kind == "tabular") {
    const Field t = f.at("table");
    std::map<History, Action> table;
    for (std::size_t i = 0; i < t.size(); ++i) {
      table[parse_history(t.at(i).at("history"), alphabet)] = parse_action(t.at(i).at("action"), alphabet);
    }
    const Action fallback = f.has("fallback") ? parse_action(f.at("fallback"), alphabet) : Action{0};
    return Policy::tabular(std::move(table), fallback,
                           f.has("name") ? f.at("name").as_string() : std::string("tabular"));
  }
  if (kind == "seqpred_every") {
    // Predicts the cyclic bit string correctly exactly at steps k, 2k, ...
    const std::string bits = f.at("bits").as_string();
    const std::size_t k = f.at("k").as_size();
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) f.at("bits").fail("expected a bit string");
    if (k == 0) f.at("k").fail("must be positive");
    if (alphabet.num_actions() != 2) f.fail("needs two actions");
    return Policy::programmatic("seqpred_every(" + bits + ", " + std::to_string(k) + ")",
                                [bits, k](const History& h) {
                                  const std::size_t t = h.size() + 1;
                                  const std::size_t bit = bits[(t - 1) % bits.size()] == '1';
                                  return Action{t % k == 0 ? bit : 1 - bit};
                                });
  }
  if (kind == "random_tabular") {
    const std::size_t depth = f.at("depth").as_size();
    std::uint64_t seed = f.has("seed") ? f.at("seed").as_u64() : (config ? config->seed : 0);
    if (depth > 4) f.at("depth").fail("at most 4");
    return random_tabular_policy(alphabet, depth, seed, "random_tabular(" + std::to_string(seed) + ")");
  }
  if (kind == "truncated") {
    const Policy inner = parse_policy(f.at("policy"), alphabet, config);
    const Action fallback = f.has("fallback") ? parse_action(f.at("fallback"), alphabet) : Action{0};
    return Policy::truncated(inner, f.at("k").as_size(), fallback);
  }
  if (kind == "optimal" || kind == "pessimal") {
    if (!config) f.fail("derived policies are only allowed at experiment level");
    const std::size_t horizon = f.has("horizon") ? f.at("horizon").as_size() : config->horizon;
    return kind == "optimal" ? optimal_policy(config->xi, config->schedule, horizon, config->tie_break)
                             : pessimal_policy(config->xi, config->schedule, horizon, config->tie_break);
  }
  f.fail("unknown policy kind '" + kind + "'");
}

ExperimentConfig parse_config(const json& source, std::optional<std::uint64_t> seed_override) {
  const Field root(source, "");
  if (!source.is_object()) root.fail("config must be an object");

  const std::string experiment = root.at("experiment").as_string();
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
    root.at("experiment").fail("unknown experiment '" + experiment + "'");
  }
  const Alphabet alphabet = root.has("alphabet") ? parse_alphabet(root.at("alphabet")) : Alphabet::binary();
  const DiscountSchedule schedule = parse_schedule(root.at("discount"));

  const Field cls = root.at("class");
  if (cls.size() == 0) cls.fail("empty environment class");
  std::vector<Component> components;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const Field c = cls.at(i);
    components.push_back({c.at("weight").as_rational(), parse_env(c.at("env"), alphabet)});
  }
  const MixturePtr xi = guarded(cls, [&] { return make_mixture(alphabet, std::move(components), "xi"); });

  const TieBreak tie_break =
      root.has("tie_break") ? parse_tie_break(root.at("tie_break"), alphabet) : TieBreak::lowest_index();

  std::size_t horizon = 0;
  if (root.has("horizon")) {
    horizon = root.at("horizon").as_size();
  } else if (root.has("eps")) {
    horizon = guarded(root.at("eps"), [&] { return schedule.effective_horizon(root.at("eps").as_rational()); });
  } else if (auto life = schedule.lifetime()) {
    horizon = *life;
  } else {
    throw ConfigError("horizon", "required unless eps is given or the schedule has a finite lifetime");
  }
  if (horizon == 0) root.at(root.has("horizon") ? "horizon" : "eps").fail("search horizon must be positive");

  std::uint64_t seed = root.has("seed") ? root.at("seed").as_u64() : 0;
  if (seed_override) seed = *seed_override;
  json echo = source;
  echo["seed"] = seed;

  json params = source.contains("params") ? source["params"] : json::object();
  if (!params.is_object()) root.at("params").fail("expected an object");
  std::string name = root.has("name") ? root.at("name").as_string() : experiment;

  return ExperimentConfig{std::move(echo), std::move(name), experiment, alphabet,   schedule,
                          xi,              tie_break,       horizon,    seed,       std::move(params)};
}

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  json source;
  try {
    source = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(source, seed_override);
}

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog = {
      {"heaven", "reward 1 forever; anchors the lower intelligence bound above 0", json::object()},
      {"hell", "reward 0 forever; keeps the upper intelligence bound below 1", json::object()},
      {"gate", "first action decides heaven or hell; separates intelligence scores",
       {{"lucky", "action leading to heaven"}}},
      {"trapdoor", "mirror of gate; makes a fixed optimal agent score low",
       {{"doomed", "action leading to hell"}}},
      {"bandit", "Bernoulli arms with rewards in {0,1}; the bandit scenario",
       {{"means", "one \"p/q\" mean per action"}}},
      {"seqpred", "cyclic bit prediction, reward 1 per correct bit; the sequence prediction scenario",
       {{"bits", "bit string, cycled"}}},
      {"coin", "action-independent coin flips with reward 0", {{"p", "probability of observation 1"}}},
      {"random", "hashed pseudo-random semimeasure for property sweeps",
       {{"seed", "integer"}, {"deficit", "bool, leave some mass unassigned"}}},
      {"dogmatic", "mirrors base along a policy, hell after any deviation; the dogmatic prior's lever",
       {{"policy", "policy spec"}, {"base", "environment spec"}}},
      {"buddy", "replays a separating history and rewards one action; defends a policy in Pareto checks",
       {{"script", "[[action, percept index], ...]"}, {"pinned", "rewarded action"}}},
  };
  return catalog;
}

}  // namespace aixilab::cli
