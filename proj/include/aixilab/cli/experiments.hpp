#pragma once

#include <string>

#include "aixilab/cli/report.hpp"

namespace aixilab::cli {

struct RunOptions {
  std::size_t jobs = 1;
};

/// Runs the configured experiment. Throws ConfigError for bad parameters.
Report run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Histories shorter than `depth` that env reaches with positive
/// probability under some action sequence, shortest first, canonical order
/// within a length.
std::vector<History> reachable_histories(const Environment& env, std::size_t depth);

/// `count` tabular policies of the given depth, drawn from `seed`.
std::vector<Policy> sample_policies(const Alphabet& alphabet, std::size_t count, std::size_t depth,
                                    std::uint64_t seed);

json zoo_json();
std::string zoo_text();

}  // namespace aixilab::cli
