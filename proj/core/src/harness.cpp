#include "mgedge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "mgedge/errors.hpp"

namespace mgedge {

namespace {

// Metrics sampling (QoE task times) gets its own child stream of the run
// seed, far away from the history stream (0) and agent streams (1..M).
constexpr std::uint64_t kMetricsStream = 0x6d65747269637321ull;

double standard_error(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (n - 1.0) / n);
}

Aggregate aggregate_runs(const std::vector<RunMetrics>& runs) {
  Aggregate agg;
  agg.runs = static_cast<int>(runs.size());
  std::vector<double> vol, att, util, qoe;
  vol.reserve(runs.size());
  att.reserve(runs.size());
  util.reserve(runs.size());
  qoe.reserve(runs.size());
  for (const RunMetrics& r : runs) {
    vol.push_back(r.metrics.volatility);
    att.push_back(r.metrics.mean_attendance);
    util.push_back(r.metrics.population_utility);
    qoe.push_back(r.metrics.qoe_probability);
  }
  auto mean = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return v.empty() ? 0.0 : m / static_cast<double>(v.size());
  };
  agg.volatility_mean = mean(vol);
  agg.volatility_se = standard_error(vol);
  agg.attendance_mean = mean(att);
  agg.utility_mean = mean(util);
  agg.utility_se = standard_error(util);
  agg.qoe_mean = mean(qoe);
  agg.qoe_se = standard_error(qoe);
  return agg;
}

}  // namespace

void ExperimentConfig::validate() const {
  game.validate();
  metrics.task_model.validate();
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (metrics.warmup < 0) throw ConfigError("warmup must be >= 0");
  if (metrics.warmup + 2 > game.num_rounds) {
    throw ConfigError("warmup must leave at least 2 measured rounds");
  }
  if (sweep_memory_sizes) {
    if (sweep_memory_sizes->empty()) throw ConfigError("sweep requires at least one memory size");
    for (int s : *sweep_memory_sizes) {
      if (s < 1 || s > 16) throw ConfigError("sweep memory sizes must lie in [1, 16]");
    }
  }
  parse_policy_spec(canonical_spec(policy));  // surfaces bad policy params early
}

const SweepPoint& ExperimentReport::best_volatility_point() const {
  if (points.empty()) throw std::logic_error("empty experiment report");
  const SweepPoint* best = &points.front();
  for (const SweepPoint& p : points) {
    if (p.aggregate.volatility_mean < best->aggregate.volatility_mean) best = &p;
  }
  return *best;
}

std::uint64_t derive_run_seed(std::uint64_t root_seed, std::string_view policy_name,
                              int memory_size, int run_index) {
  std::uint64_t h = root_seed;
  for (unsigned char c : policy_name) {
    h = mix64(h ^ (kGoldenGamma * (static_cast<std::uint64_t>(c) + 1)));
  }
  h = mix64(h + kGoldenGamma * (static_cast<std::uint64_t>(memory_size) + 1));
  h = mix64(h + kGoldenGamma * (static_cast<std::uint64_t>(run_index) + 1));
  return h;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = std::min(std::max(threads, 1), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();

  const bool table_based = policy_uses_strategy_tables(config.policy);
  ExperimentReport report;
  report.policy = config.policy;

  // Evaluated (policy, s) cells. Memoryless rules have a single cell no
  // matter how many alpha keys a sweep requests.
  struct Cell {
    PolicySpec spec;
    int memory_size;  // 0 for memoryless
  };
  std::vector<Cell> cells;
  if (config.sweep_memory_sizes && table_based) {
    for (int s : *config.sweep_memory_sizes) {
      cells.push_back({override_memory_size(config.policy, s), s});
    }
  } else {
    cells.push_back({config.policy, policy_memory_size(config.policy)});
  }

  std::vector<std::vector<RunMetrics>> results(cells.size());
  for (auto& slot : results) slot.resize(config.runs);

  const int total = static_cast<int>(cells.size()) * config.runs;
  parallel_for(total, config.threads, [&](int item) {
    const int cell_index = item / config.runs;
    const int run_index = item % config.runs;
    const Cell& cell = cells[cell_index];
    const std::uint64_t seed =
        derive_run_seed(config.root_seed, config.policy.name, cell.memory_size, run_index);
    GameTrace trace = run_game(config.game, cell.spec, seed);
    SplitMix64 metrics_rng(derive_seed(seed, kMetricsStream));
    MetricReport metrics =
        evaluate_trace(trace, config.metrics.task_model, config.metrics.warmup, metrics_rng);
    results[cell_index][run_index] = RunMetrics{run_index, seed, std::move(metrics)};
  });

  auto alpha_for = [&](int s) {
    return static_cast<double>(1ull << s) / config.game.num_agents;
  };

  if (config.sweep_memory_sizes && !table_based) {
    // One evaluation, replicated across the requested alpha keys and flagged
    // flat so downstream output can collapse it.
    for (int s : *config.sweep_memory_sizes) {
      SweepPoint point;
      point.memory_size = std::nullopt;
      point.alpha = alpha_for(s);
      point.flat = true;
      point.policy = cells[0].spec;
      point.runs = results[0];
      point.aggregate = aggregate_runs(point.runs);
      report.points.push_back(std::move(point));
    }
    return report;
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    SweepPoint point;
    if (table_based) {
      point.memory_size = cells[c].memory_size;
      point.alpha = alpha_for(cells[c].memory_size);
      point.flat = false;
    } else {
      point.memory_size = std::nullopt;
      point.flat = true;
    }
    point.policy = cells[c].spec;
    point.runs = std::move(results[c]);
    point.aggregate = aggregate_runs(point.runs);
    report.points.push_back(std::move(point));
  }
  return report;
}

ExperimentReport sweep_alpha(ExperimentConfig config, std::vector<int> memory_sizes) {
  config.sweep_memory_sizes = std::move(memory_sizes);
  return run_experiment(config);
}

std::vector<PolicySpec> default_policy_grid() {
  static const std::vector<std::string> specs = {
      "seminal(S=2)",
      "exponential(S=2,gamma=100)",
      "qlearn-action(gamma=0.1,eps=0.01)",
      "adaptive(aplus=0.5,aminus=0.5,x0=0.5)",
      "wsls(p=0.005)",
      "rotherev(lambda=0.2)",
      "automata(gamma=0.2,delta=0.3)",
      "random",
  };
  std::vector<PolicySpec> grid;
  grid.reserve(specs.size());
  for (const std::string& s : specs) grid.push_back(parse_policy_spec(s));
  return grid;
}

std::vector<ExperimentReport> compare_policies(const CompareConfig& config) {
  const std::vector<PolicySpec> grid =
      config.policies.empty() ? default_policy_grid() : config.policies;

  std::vector<ExperimentReport> reports;
  reports.reserve(grid.size());
  for (const PolicySpec& spec : grid) {
    ExperimentConfig ec;
    ec.game = config.game;
    ec.policy = spec;
    ec.runs = config.runs;
    ec.root_seed = config.root_seed;
    ec.metrics = config.metrics;
    ec.threads = config.threads;
    if (policy_uses_strategy_tables(spec)) {
      ec.sweep_memory_sizes = config.sweep_memory_sizes;
    }
    reports.push_back(run_experiment(ec));
  }
  return reports;
}

std::vector<PolicySummary> rank_policies(const std::vector<ExperimentReport>& reports) {
  std::vector<PolicySummary> summary;
  summary.reserve(reports.size());
  for (const ExperimentReport& report : reports) {
    const SweepPoint& best = report.best_volatility_point();
    PolicySummary row;
    row.policy = canonical_spec(best.policy);
    row.name = report.policy.name;
    row.memory_size = best.memory_size;
    row.alpha = best.flat ? std::numeric_limits<double>::quiet_NaN() : best.alpha;
    row.volatility = best.aggregate.volatility_mean;
    row.volatility_se = best.aggregate.volatility_se;
    row.utility = best.aggregate.utility_mean;
    row.qoe = best.aggregate.qoe_mean;
    summary.push_back(std::move(row));
  }
  std::stable_sort(summary.begin(), summary.end(),
                   [](const PolicySummary& a, const PolicySummary& b) {
                     return a.volatility < b.volatility;
                   });
  return summary;
}

}  // namespace mgedge
