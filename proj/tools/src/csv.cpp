#include "csv.hpp"

#include <cstdio>
#include <fstream>

#include "mgedge/errors.hpp"

namespace mgedge {

std::string csv_header() {
  return "experiment_id,policy,alpha,run_index,volatility,mean_attendance,"
         "avg_utility,qoe_prob,seed,warmup,K,mu,T_deadline";
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string to_csv_line(const OutputRow& row) {
  std::string line;
  line.reserve(160);
  line += row.experiment_id;
  line += ',';
  line += row.policy;
  line += ',';
  line += row.alpha ? format_real(*row.alpha) : "na";
  line += ',';
  line += row.run_index ? std::to_string(*row.run_index) : "agg";
  line += ',';
  line += format_real(row.volatility);
  line += ',';
  line += format_real(row.mean_attendance);
  line += ',';
  line += format_real(row.avg_utility);
  line += ',';
  line += format_real(row.qoe_prob);
  line += ',';
  line += std::to_string(row.seed);
  line += ',';
  line += std::to_string(row.warmup);
  line += ',';
  line += std::to_string(row.tasks_per_round);
  line += ',';
  line += format_real(row.mean_task_time);
  line += ',';
  line += format_real(row.deadline);
  return line;
}

std::vector<OutputRow> make_rows(const std::string& experiment_id,
                                 const std::vector<ExperimentReport>& reports,
                                 const MetricsOptions& metrics, std::uint64_t root_seed) {
  std::vector<OutputRow> rows;
  for (const ExperimentReport& report : reports) {
    for (const SweepPoint& point : report.points) {
      if (point.flat && &point != &report.points.front()) continue;  // replicated keys

      OutputRow base;
      base.experiment_id = experiment_id;
      base.policy = canonical_spec(point.policy);
      base.alpha = point.flat ? std::optional<double>{} : std::optional<double>{point.alpha};
      base.warmup = metrics.warmup;
      base.tasks_per_round = metrics.task_model.tasks_per_round;
      base.mean_task_time = metrics.task_model.mean_task_time;
      base.deadline = metrics.task_model.deadline;

      for (const RunMetrics& run : point.runs) {
        OutputRow row = base;
        row.run_index = run.run_index;
        row.volatility = run.metrics.volatility;
        row.mean_attendance = run.metrics.mean_attendance;
        row.avg_utility = run.metrics.population_utility;
        row.qoe_prob = run.metrics.qoe_probability;
        row.seed = run.seed;
        rows.push_back(std::move(row));
      }

      OutputRow agg = base;
      agg.run_index = std::nullopt;
      agg.volatility = point.aggregate.volatility_mean;
      agg.mean_attendance = point.aggregate.attendance_mean;
      agg.avg_utility = point.aggregate.utility_mean;
      agg.qoe_prob = point.aggregate.qoe_mean;
      agg.seed = root_seed;
      rows.push_back(std::move(agg));
    }
  }
  return rows;
}

void write_results_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& metadata,
                       const std::vector<OutputRow>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical output
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& [key, value] : metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  out << csv_header() << '\n';
  for (const OutputRow& row : rows) {
    out << to_csv_line(row) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace mgedge
