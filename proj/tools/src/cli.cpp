#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "mgedge/errors.hpp"
#include "csv.hpp"
#include "svg_plot.hpp"

namespace mgedge {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long parsed = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse integer '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse integer '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number '" + value + "'");
  }
}

}  // namespace

std::vector<int> parse_sweep_list(const std::string& text) {
  std::vector<int> values;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    values.push_back(static_cast<int>(parse_long("sweep-s", item)));
  }
  if (values.empty()) throw ConfigError("sweep-s: expected a comma-separated list like 1,2,3");
  return values;
}

void apply_config_file(const std::string& path, const std::vector<std::string>& explicit_keys,
                       CliOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");

  auto overridden = [&](const std::string& key) {
    return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
  };

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (overridden(key)) continue;  // command-line flags win

    if (key == "agents") {
      options.agents = static_cast<int>(parse_long(key, value));
    } else if (key == "cutoff") {
      options.cutoff = static_cast<int>(parse_long(key, value));
    } else if (key == "rounds") {
      options.rounds = static_cast<int>(parse_long(key, value));
    } else if (key == "runs") {
      options.runs = static_cast<int>(parse_long(key, value));
    } else if (key == "seed") {
      options.seed = parse_u64(key, value);
    } else if (key == "policy") {
      options.policy = value;
    } else if (key == "sweep-s") {
      options.sweep_s = parse_sweep_list(value);
    } else if (key == "warmup") {
      options.warmup = static_cast<int>(parse_long(key, value));
    } else if (key == "tasks-per-round") {
      options.tasks_per_round = static_cast<int>(parse_long(key, value));
    } else if (key == "mean-task-time") {
      options.mean_task_time = parse_double(key, value);
    } else if (key == "deadline") {
      options.deadline = parse_double(key, value);
    } else if (key == "threads") {
      options.threads = static_cast<int>(parse_long(key, value));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void validate_options(const CliOptions& options) {
  if (options.agents <= 0) throw ConfigError("agents must be positive");
  if (options.agents % 2 == 0) throw ConfigError("agents must be odd");
  if (options.cutoff <= 0 || options.cutoff >= options.agents) {
    throw ConfigError("cutoff must satisfy 0 < cutoff < agents");
  }
  if (options.rounds < 2) throw ConfigError("rounds must be at least 2");
  if (options.runs < 1) throw ConfigError("runs must be at least 1");
  if (options.warmup < 0 || options.warmup + 2 > options.rounds) {
    throw ConfigError("warmup must leave at least 2 measured rounds");
  }
  if (options.tasks_per_round < 1) throw ConfigError("tasks-per-round must be at least 1");
  if (!(options.mean_task_time > 0)) throw ConfigError("mean-task-time must be positive");
  if (!(options.deadline > 0)) throw ConfigError("deadline must be positive");
  if (options.threads < 1) throw ConfigError("threads must be at least 1");
  for (int s : options.sweep_s) {
    if (s < 1 || s > 16) throw ConfigError("sweep-s values must lie in [1, 16]");
  }
  parse_policy_spec(options.policy);
  for (const std::string& spec : options.grid_policies) parse_policy_spec(spec);
}

ExperimentConfig experiment_config(const CliOptions& options) {
  ExperimentConfig config;
  config.game.num_agents = options.agents;
  config.game.cutoff = options.cutoff;
  config.game.num_rounds = options.rounds;
  config.policy = parse_policy_spec(options.policy);
  config.runs = options.runs;
  config.root_seed = options.seed;
  config.metrics.warmup = options.warmup;
  config.metrics.task_model.tasks_per_round = options.tasks_per_round;
  config.metrics.task_model.mean_task_time = options.mean_task_time;
  config.metrics.task_model.deadline = options.deadline;
  config.threads = options.threads;
  return config;
}

CompareConfig compare_config(const CliOptions& options) {
  CompareConfig config;
  config.game.num_agents = options.agents;
  config.game.cutoff = options.cutoff;
  config.game.num_rounds = options.rounds;
  config.runs = options.runs;
  config.root_seed = options.seed;
  config.metrics.warmup = options.warmup;
  config.metrics.task_model.tasks_per_round = options.tasks_per_round;
  config.metrics.task_model.mean_task_time = options.mean_task_time;
  config.metrics.task_model.deadline = options.deadline;
  config.sweep_memory_sizes = options.sweep_s;
  config.threads = options.threads;
  for (const std::string& spec : options.grid_policies) {
    config.policies.push_back(parse_policy_spec(spec));
  }
  return config;
}

std::vector<std::pair<std::string, std::string>> metadata_lines(
    const std::string& command, const CliOptions& options,
    const std::vector<std::string>& policies) {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.emplace_back("tool", "mg-edge-lab");
  lines.emplace_back("command", command);
  lines.emplace_back("agents", std::to_string(options.agents));
  lines.emplace_back("cutoff", std::to_string(options.cutoff));
  lines.emplace_back("rounds", std::to_string(options.rounds));
  lines.emplace_back("runs", std::to_string(options.runs));
  lines.emplace_back("seed", std::to_string(options.seed));
  lines.emplace_back("reward", "1");
  std::string joined;
  for (const std::string& p : policies) {
    if (!joined.empty()) joined += ';';
    joined += p;
  }
  lines.emplace_back(policies.size() == 1 ? "policy" : "policies", joined);
  if (command == "sweep" || command == "compare") {
    std::string sweep;
    for (int s : options.sweep_s) {
      if (!sweep.empty()) sweep += ',';
      sweep += std::to_string(s);
    }
    lines.emplace_back("sweep-s", sweep);
  }
  lines.emplace_back("warmup", std::to_string(options.warmup));
  lines.emplace_back("tasks-per-round", std::to_string(options.tasks_per_round));
  lines.emplace_back("mean-task-time", format_real(options.mean_task_time));
  lines.emplace_back("deadline", format_real(options.deadline));
  lines.emplace_back("task-distribution", "exponential");
  return lines;
}

namespace {

std::filesystem::path prepare_out_dir(const CliOptions& options) {
  std::filesystem::path dir(options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + options.out_dir + "'");
  return dir;
}

void emit_outputs(const std::string& command, const CliOptions& options,
                  const std::vector<ExperimentReport>& reports) {
  const auto dir = prepare_out_dir(options);
  std::vector<std::string> policies;
  for (const ExperimentReport& r : reports) policies.push_back(canonical_spec(r.policy));

  ExperimentConfig ec = experiment_config(options);
  const auto rows = make_rows(command, reports, ec.metrics, options.seed);
  write_results_csv((dir / "results.csv").string(), metadata_lines(command, options, policies),
                    rows);
  std::printf("wrote %s (%zu rows)\n", (dir / "results.csv").string().c_str(), rows.size());

  if (options.plot) {
    const double optimum = static_cast<double>(options.cutoff) / options.agents;
    write_volatility_plot((dir / "volatility_vs_alpha.svg").string(), reports);
    write_utility_plot((dir / "utility_per_policy.svg").string(), reports, optimum);
    write_qoe_plot((dir / "qoe_per_policy.svg").string(), reports);
    std::printf("wrote %s, %s, %s\n", (dir / "volatility_vs_alpha.svg").string().c_str(),
                (dir / "utility_per_policy.svg").string().c_str(),
                (dir / "qoe_per_policy.svg").string().c_str());
  }
}

void print_ranking(const std::vector<ExperimentReport>& reports) {
  const auto summary = rank_policies(reports);
  std::printf("%-4s %-52s %-12s %-8s %-9s %-9s\n", "rank", "policy (best sweep point)",
              "volatility", "alpha", "utility", "qoe");
  int rank = 1;
  for (const PolicySummary& row : summary) {
    std::printf("%-4d %-52s %-12s %-8s %-9s %-9s\n", rank++, row.policy.c_str(),
                format_real(row.volatility).c_str(),
                std::isnan(row.alpha) ? "na" : format_real(row.alpha).c_str(),
                format_real(row.utility).c_str(), format_real(row.qoe).c_str());
  }
}

int run_selftest(const CliOptions& options) {
  int failures = 0;
  auto check = [&](bool ok, const std::string& label, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    if (!ok) ++failures;
  };

  // Random baseline against the Binomial(M, 1/2) moments.
  CliOptions base = options;
  base.policy = "random";
  ExperimentConfig config = experiment_config(base);
  const ExperimentReport report = run_experiment(config);
  const Aggregate& agg = report.points.front().aggregate;
  const double m = options.agents;
  const double expected_vol = 0.25;  // variance M/4 over M
  const double expected_att = m / 2.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "volatility %.4f vs %.2f +/- 0.02",
                agg.volatility_mean, expected_vol);
  check(std::fabs(agg.volatility_mean - expected_vol) <= 0.02, "random-volatility", detail);
  std::snprintf(detail, sizeof(detail), "attendance %.3f vs %.1f +/- 0.1",
                agg.attendance_mean, expected_att);
  check(std::fabs(agg.attendance_mean - expected_att) <= 0.1, "random-attendance", detail);

  // Determinism: identical seeds must reproduce identical traces.
  GameConfig small{options.agents, options.cutoff, 500, 1.0};
  const PolicySpec spec = parse_policy_spec("exponential(S=2,s=3,gamma=100)");
  const GameTrace a = run_game(small, spec, options.seed);
  const GameTrace b = run_game(small, spec, options.seed);
  check(a.actions == b.actions, "determinism", "two identical runs, identical traces");

  // Reward accounting on the same trace.
  bool conserved = true;
  for (const RoundOutcome& o : a.outcomes) {
    int winners = 0;
    for (double r : o.rewards) winners += r > 0;
    const int expected = o.winning_action == Action::Active ? o.attendance
                                                            : small.num_agents - o.attendance;
    conserved = conserved && winners == expected;
  }
  check(conserved, "reward-conservation", "winner counts match attendance split");

  emit_outputs("selftest", base, {report});
  return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Minority-game lab for energy-efficient edge-server activation"};
  app.require_subcommand(1);

  CliOptions options;
  std::string config_path;
  std::string sweep_text;
  std::string policies_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--agents", options.agents, "Number of servers M (odd)");
    cmd->add_option("--cutoff", options.cutoff, "Activation cutoff c_th");
    cmd->add_option("--rounds", options.rounds, "Offloading rounds per run");
    cmd->add_option("--runs", options.runs, "Independent runs per configuration");
    cmd->add_option("--seed", options.seed, "Root seed");
    cmd->add_option("--warmup", options.warmup, "Rounds excluded from statistics");
    cmd->add_option("--tasks-per-round", options.tasks_per_round, "Batch size K");
    cmd->add_option("--mean-task-time", options.mean_task_time, "Mean task time mu [s]");
    cmd->add_option("--deadline", options.deadline, "Deadline T [s]");
    cmd->add_option("--out", options.out_dir, "Output directory");
    cmd->add_flag("--plot", options.plot, "Also emit SVG figures");
    cmd->add_option("--config", config_path, "key=value config file; flags override");
    cmd->add_option("--threads", options.threads, "Worker threads (results identical)");
  };

  CLI::App* run = app.add_subcommand("run", "Run one experiment with one policy");
  add_common(run);
  run->add_option("--policy", options.policy, "Policy spec, e.g. wsls(p=0.005)");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep memory size s (alpha = 2^s/M)");
  add_common(sweep);
  sweep->add_option("--policy", options.policy, "Policy spec to sweep");
  sweep->add_option("--sweep-s", sweep_text, "Comma-separated memory sizes (default 1..7)");

  CLI::App* compare = app.add_subcommand("compare", "Run the full policy comparison grid");
  add_common(compare);
  compare->add_option("--sweep-s", sweep_text, "Memory sizes for table-based policies");
  compare->add_option("--policies", policies_text,
                      "Semicolon-separated policy specs replacing the default grid");

  CLI::App* selftest = app.add_subcommand("selftest", "Analytic baseline self-checks");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const std::string command = active->get_name();

    if (!sweep_text.empty()) options.sweep_s = parse_sweep_list(sweep_text);
    if (!policies_text.empty()) {
      std::stringstream stream(policies_text);
      std::string item;
      while (std::getline(stream, item, ';')) {
        item = trim(item);
        if (!item.empty()) options.grid_policies.push_back(item);
      }
    }

    if (!config_path.empty()) {
      std::vector<std::string> explicit_keys;
      for (const auto* opt : active->get_options()) {
        if (opt->count() == 0) continue;
        std::string name = opt->get_name();
        if (name.rfind("--", 0) == 0) name.erase(0, 2);
        explicit_keys.push_back(name);
      }
      apply_config_file(config_path, explicit_keys, options);
    }
    validate_options(options);

    if (command == "run") {
      const ExperimentReport report = run_experiment(experiment_config(options));
      emit_outputs(command, options, {report});
      print_ranking({report});
      return 0;
    }
    if (command == "sweep") {
      ExperimentConfig config = experiment_config(options);
      config.sweep_memory_sizes = options.sweep_s;
      const ExperimentReport report = run_experiment(config);
      emit_outputs(command, options, {report});
      print_ranking({report});
      return 0;
    }
    if (command == "compare") {
      const auto reports = compare_policies(compare_config(options));
      emit_outputs(command, options, reports);
      print_ranking(reports);
      return 0;
    }
    return run_selftest(options);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace mgedge
