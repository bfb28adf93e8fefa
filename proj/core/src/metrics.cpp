#include "mgedge/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "mgedge/errors.hpp"

namespace mgedge {

void TaskModel::validate() const {
  if (tasks_per_round < 1) throw ConfigError("tasks_per_round must be at least 1");
  if (!(mean_task_time > 0.0)) throw ConfigError("mean_task_time must be positive");
  if (!(deadline > 0.0)) throw ConfigError("deadline must be positive");
}

double volatility(std::span<const int> attendance, int num_agents, int warmup) {
  const auto n = static_cast<long>(attendance.size()) - warmup;
  if (warmup < 0 || n < 2) {
    throw std::invalid_argument("attendance series must extend at least 2 rounds past warmup");
  }
  double mean = 0.0;
  for (long t = warmup; t < static_cast<long>(attendance.size()); ++t) mean += attendance[t];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (long t = warmup; t < static_cast<long>(attendance.size()); ++t) {
    const double d = attendance[t] - mean;
    ss += d * d;
  }
  const double sample_variance = ss / static_cast<double>(n - 1);
  return sample_variance / num_agents;
}

double mean_attendance(std::span<const int> attendance, int warmup) {
  const auto n = static_cast<long>(attendance.size()) - warmup;
  if (warmup < 0 || n < 1) {
    throw std::invalid_argument("attendance series shorter than warmup");
  }
  double mean = 0.0;
  for (long t = warmup; t < static_cast<long>(attendance.size()); ++t) mean += attendance[t];
  return mean / static_cast<double>(n);
}

UtilityStats average_utility(const GameTrace& trace, int warmup) {
  const int m = trace.config.num_agents;
  const auto rounds = static_cast<long>(trace.outcomes.size());
  const long n = rounds - warmup;
  if (warmup < 0 || n < 1) {
    throw std::invalid_argument("trace shorter than warmup");
  }
  UtilityStats stats;
  stats.per_agent.assign(m, 0.0);
  for (long t = warmup; t < rounds; ++t) {
    const auto& rewards = trace.outcomes[t].rewards;
    for (int i = 0; i < m; ++i) stats.per_agent[i] += rewards[i];
  }
  double total = 0.0;
  for (double& u : stats.per_agent) {
    u /= static_cast<double>(n);
    total += u;
  }
  stats.population_mean = total / m;
  return stats;
}

double qoe_probability(const GameTrace& trace, const TaskModel& model, int warmup,
                       SplitMix64& rng) {
  model.validate();
  const auto rounds = static_cast<long>(trace.outcomes.size());
  const long n = rounds - warmup;
  if (warmup < 0 || n < 1) {
    throw std::invalid_argument("trace shorter than warmup");
  }

  const double mu = model.mean_task_time;
  double total = 0.0;
  for (long t = warmup; t < rounds; ++t) {
    const int active = trace.outcomes[t].attendance;
    if (active == 0) continue;  // every task misses; the round contributes 0

    // Round-robin split: the first K mod c servers carry one extra task.
    const int base = model.tasks_per_round / active;
    const int extra = model.tasks_per_round % active;
    int met = 0;
    for (int server = 0; server < active; ++server) {
      const int load = base + (server < extra ? 1 : 0);
      double busy = 0.0;
      if (model.distribution == TaskTimeDistribution::kDeterministic) {
        busy = load * mu;
      } else {
        for (int task = 0; task < load; ++task) {
          busy += -mu * std::log1p(-rng.uniform01());
        }
      }
      if (busy <= model.deadline) ++met;
    }
    total += static_cast<double>(met) / active;
  }
  return total / static_cast<double>(n);
}

MetricReport evaluate_trace(const GameTrace& trace, const TaskModel& model, int warmup,
                            SplitMix64& rng) {
  MetricReport report;
  const std::vector<int> attendance = trace.attendance_series();
  report.volatility = volatility(attendance, trace.config.num_agents, warmup);
  report.mean_attendance = mean_attendance(attendance, warmup);
  UtilityStats utility = average_utility(trace, warmup);
  report.avg_utility_per_agent = std::move(utility.per_agent);
  report.population_utility = utility.population_mean;
  report.qoe_probability = qoe_probability(trace, model, warmup, rng);
  report.warmup_rounds = warmup;
  return report;
}

}  // namespace mgedge
