#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgedge/harness.hpp"

namespace mgedge {

// Everything the four subcommands consume. Flag defaults are the published
// experiment scale: 21 servers, cutoff 10, 10000 rounds, 32 runs.
struct CliOptions {
  int agents = 21;
  int cutoff = 10;
  int rounds = 10000;
  int runs = 32;
  std::uint64_t seed = 1;
  std::string policy = "seminal(S=2,s=3)";
  std::vector<int> sweep_s = {1, 2, 3, 4, 5, 6, 7};
  int warmup = 0;
  int tasks_per_round = 50;
  double mean_task_time = 1.0;
  double deadline = 10.0;
  std::string out_dir = ".";
  bool plot = false;
  int threads = 1;
  std::vector<std::string> grid_policies;  // compare only; empty = default grid
};

// Applies `key=value` lines from a config file to every option that was not
// set on the command line (`explicit_keys`). `#` starts a comment. Unknown
// keys, unparsable values and violated invariants throw ConfigError naming
// the key.
void apply_config_file(const std::string& path, const std::vector<std::string>& explicit_keys,
                       CliOptions& options);

// Validates cross-field invariants with CLI key names in the messages
// ("agents must be odd", ...). Throws ConfigError.
void validate_options(const CliOptions& options);

ExperimentConfig experiment_config(const CliOptions& options);
CompareConfig compare_config(const CliOptions& options);

// Parses a comma-separated memory-size list ("1,2,3").
std::vector<int> parse_sweep_list(const std::string& text);

// Metadata preamble for results.csv: the full effective experiment
// configuration. Execution details that cannot change results (thread
// count, output paths) are deliberately excluded so identical experiments
// produce identical files.
std::vector<std::pair<std::string, std::string>> metadata_lines(
    const std::string& command, const CliOptions& options,
    const std::vector<std::string>& policies);

// Entry point used by main(); returns the process exit code (0 ok,
// 1 I/O or selftest failure, 2 configuration error).
int cli_main(int argc, const char* const* argv);

}  // namespace mgedge
