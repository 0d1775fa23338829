#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aixilab/cli/experiments.hpp"

namespace fs = std::filesystem;
using namespace aixilab;
using namespace aixilab::cli;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run(const std::string& config_path, const std::string& out_dir, const std::string& format,
        std::optional<std::uint64_t> seed, std::size_t jobs) {
  ExperimentConfig config = [&] {
    try {
      return load_config(config_path, seed);
    } catch (const DomainError& e) {
      throw ConfigError("config", e.what());
    }
  }();

  const auto start = std::chrono::steady_clock::now();
  const Report report = run_experiment(config, {jobs});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  fs::create_directories(out_dir);
  const fs::path base = fs::path(out_dir) / config.name;
  if (format == "json" || format == "both") {
    write_file(base.string() + ".json", with_timing(report.to_json(config), seconds).dump(2) + "\n");
  }
  if (format == "csv" || format == "both") write_file(base.string() + ".csv", to_csv(report.table()));

  std::size_t failed = 0;
  for (const auto& c : report.checks()) {
    if (!holds(c.outcome)) {
      ++failed;
      std::cout << to_string(c.outcome) << ": " << c.name << "\n";
    }
  }
  std::cout << config.name << ": " << to_string(report.status()) << " (" << report.checks().size() - failed
            << "/" << report.checks().size() << " checks hold)\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on Bayesian reinforcement learning priors"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "both";
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "both"}));
  run_cmd->add_option("--seed", seed, "Seed for sampled policies (overrides the config)");
  run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* zoo_cmd = app.add_subcommand("list-zoo", "List environment constructors");
  bool as_json = false;
  zoo_cmd->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (zoo_cmd->parsed()) {
    std::cout << (as_json ? zoo_json().dump(2) + "\n" : zoo_text());
    return 0;
  }
  try {
    return run(config_path, out_dir, format, seed, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
