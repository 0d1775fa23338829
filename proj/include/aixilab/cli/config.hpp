#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aixilab/mixture.hpp"
#include "aixilab/planner.hpp"

namespace aixilab::cli {

using json = nlohmann::ordered_json;

/// Invalid configuration; `field` is the JSON path of the offending value
/// (e.g. "class[1].env.means").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A JSON value together with its path, for error messages.
class Field {
 public:
  Field(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& value() const { return *value_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const;
  Field at(const std::string& key) const;
  Field at(std::size_t index) const;
  std::size_t size() const;

  std::string as_string() const;
  std::size_t as_size() const;
  std::uint64_t as_u64() const;
  bool as_bool() const;
  /// "p/q" or "p" strings, or JSON integers.
  Rational as_rational() const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const json* value_;
  std::string path_;
};

struct ExperimentConfig {
  json source;  // the configuration as given (plus the effective seed)
  std::string name;
  std::string experiment;
  Alphabet alphabet;
  DiscountSchedule schedule;
  MixturePtr xi;
  TieBreak tie_break;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  json params;

  Field param(const std::string& key) const { return Field(params, "params").at(key); }
  bool has_param(const std::string& key) const { return params.contains(key); }
};

extern const std::vector<std::string> kExperiments;

ExperimentConfig parse_config(const json& source, std::optional<std::uint64_t> seed_override = {});
ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = {});

Alphabet parse_alphabet(const Field& f);
DiscountSchedule parse_schedule(const Field& f);
TieBreak parse_tie_break(const Field& f, const Alphabet& alphabet);
/// Environment spec {"kind": ..., ...}; see list_zoo for the kinds.
EnvPtr parse_env(const Field& f, const Alphabet& alphabet);
History parse_history(const Field& f, const Alphabet& alphabet);

/// Policy spec {"kind": ...}. "optimal" and "pessimal" plan against the
/// configured class, so they need `config`.
Policy parse_policy(const Field& f, const Alphabet& alphabet, const ExperimentConfig* config = nullptr);

/// Tabular policy over all histories shorter than `depth` with uniformly
/// drawn actions (fallback action 0 beyond).
Policy random_tabular_policy(const Alphabet& alphabet, std::size_t depth, std::uint64_t seed,
                             std::string name);

struct ZooEntry {
  std::string kind;
  std::string role;
  json params;  // parameter name -> description
};

const std::vector<ZooEntry>& zoo_catalog();

}  // namespace aixilab::cli
