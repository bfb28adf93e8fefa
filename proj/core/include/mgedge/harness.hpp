#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "mgedge/metrics.hpp"

namespace mgedge {

struct MetricsOptions {
  int warmup = 0;  // rounds excluded from every statistic
  TaskModel task_model;
};

struct ExperimentConfig {
  GameConfig game;
  PolicySpec policy;
  int runs = 32;
  std::uint64_t root_seed = 1;
  // Memory sizes to sweep (alpha = 2^s / num_agents). Memoryless policies
  // are evaluated once and replicated across the requested keys.
  std::optional<std::vector<int>> sweep_memory_sizes;
  MetricsOptions metrics;
  int threads = 1;  // <= 1 runs serially; results identical either way

  void validate() const;  // throws ConfigError
};

struct RunMetrics {
  int run_index = 0;
  std::uint64_t seed = 0;
  MetricReport metrics;
};

struct Aggregate {
  int runs = 0;
  double volatility_mean = 0, volatility_se = 0;
  double attendance_mean = 0;
  double utility_mean = 0, utility_se = 0;
  double qoe_mean = 0, qoe_se = 0;
};

struct SweepPoint {
  std::optional<int> memory_size;  // empty for memoryless rules
  double alpha = std::numeric_limits<double>::quiet_NaN();
  bool flat = false;  // memoryless: same evaluation at every alpha key
  PolicySpec policy;  // effective spec at this point
  std::vector<RunMetrics> runs;
  Aggregate aggregate;
};

struct ExperimentReport {
  PolicySpec policy;
  std::vector<SweepPoint> points;

  const SweepPoint& best_volatility_point() const;
};

// Per-run seed: a mixing hash over the root seed, the policy name, the
// memory size and the run index, so every cell of an experiment grid gets
// its own stream regardless of execution order.
std::uint64_t derive_run_seed(std::uint64_t root_seed, std::string_view policy_name,
                              int memory_size, int run_index);

// R independent runs per sweep point, aggregated. Deterministic given the
// config, including across thread counts.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Volatility (and the other two metrics) as a function of alpha = 2^s / M.
ExperimentReport sweep_alpha(ExperimentConfig config, std::vector<int> memory_sizes);

struct CompareConfig {
  GameConfig game;
  int runs = 32;
  std::uint64_t root_seed = 1;
  MetricsOptions metrics;
  std::vector<int> sweep_memory_sizes = {1, 2, 3, 4, 5, 6, 7};
  std::vector<PolicySpec> policies;  // empty selects default_policy_grid()
  int threads = 1;
};

// The published comparison grid: seven learners plus the random baseline,
// each with its published parameters. Table-based rules get swept over
// CompareConfig::sweep_memory_sizes; the rest are flat.
std::vector<PolicySpec> default_policy_grid();

std::vector<ExperimentReport> compare_policies(const CompareConfig& config);

struct PolicySummary {
  std::string policy;  // canonical spec at the best sweep point
  std::string name;
  std::optional<int> memory_size;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double volatility = 0, volatility_se = 0;
  double utility = 0;
  double qoe = 0;
};

// One line per policy at its lowest-volatility sweep point, best first.
std::vector<PolicySummary> rank_policies(const std::vector<ExperimentReport>& reports);

// Runs body(0..count-1) on up to `threads` workers; rethrows the first
// exception after joining. Callers own any output slotting.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace mgedge
