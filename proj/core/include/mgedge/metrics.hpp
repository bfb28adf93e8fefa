#pragma once

#include <span>
#include <vector>

#include "mgedge/game.hpp"
#include "mgedge/rng.hpp"

namespace mgedge {

enum class TaskTimeDistribution { kExponential, kDeterministic };

// Workload behind the deadline-satisfaction metric: each round a fixed batch
// of tasks arrives and is split as evenly as possible among active servers.
struct TaskModel {
  int tasks_per_round = 50;
  double mean_task_time = 1.0;  // seconds
  double deadline = 10.0;       // seconds
  TaskTimeDistribution distribution = TaskTimeDistribution::kExponential;

  void validate() const;  // throws ConfigError
};

struct UtilityStats {
  std::vector<double> per_agent;  // mean reward per round, measured window
  double population_mean = 0.0;
};

struct MetricReport {
  double volatility = 0.0;
  double mean_attendance = 0.0;
  std::vector<double> avg_utility_per_agent;
  double population_utility = 0.0;
  double qoe_probability = 0.0;
  int warmup_rounds = 0;
};

// Sample variance of the attendance after `warmup` rounds, divided by the
// population size. Zero is the Nash benchmark. Throws std::invalid_argument
// unless attendance.size() > warmup + 1.
double volatility(std::span<const int> attendance, int num_agents, int warmup);

double mean_attendance(std::span<const int> attendance, int warmup);

UtilityStats average_utility(const GameTrace& trace, int warmup);

// Monte Carlo estimate of the per-round fraction of active servers that
// finish their share of the batch within the deadline. Rounds with no active
// server contribute 0 (every task misses).
double qoe_probability(const GameTrace& trace, const TaskModel& model, int warmup,
                       SplitMix64& rng);

MetricReport evaluate_trace(const GameTrace& trace, const TaskModel& model, int warmup,
                            SplitMix64& rng);

}  // namespace mgedge
