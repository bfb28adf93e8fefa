#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgedge/harness.hpp"

namespace mgedge {

// One results.csv line. Real-valued fields are rendered with 6 significant
// digits; alpha is "na" for memoryless rules and run_index is "agg" for the
// cross-run aggregate row of a sweep point.
struct OutputRow {
  std::string experiment_id;
  std::string policy;
  std::optional<double> alpha;
  std::optional<int> run_index;
  double volatility = 0;
  double mean_attendance = 0;
  double avg_utility = 0;
  double qoe_prob = 0;
  std::uint64_t seed = 0;
  int warmup = 0;
  int tasks_per_round = 0;
  double mean_task_time = 0;
  double deadline = 0;
};

std::string csv_header();
std::string format_real(double value);  // %.6g
std::string to_csv_line(const OutputRow& row);

// Per-run rows followed by one aggregate row for every sweep point. A sweep
// over a memoryless policy collapses to a single row set with alpha = "na".
std::vector<OutputRow> make_rows(const std::string& experiment_id,
                                 const std::vector<ExperimentReport>& reports,
                                 const MetricsOptions& metrics, std::uint64_t root_seed);

// Writes `# key=value` metadata lines, the header, then the rows. Throws
// IoError when the file cannot be created.
void write_results_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& metadata,
                       const std::vector<OutputRow>& rows);

}  // namespace mgedge
