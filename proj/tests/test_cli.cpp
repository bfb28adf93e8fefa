#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "csv.hpp"
#include "mgedge/errors.hpp"

using namespace mgedge;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("config files populate options; flags keep priority") {
  const auto path = write_temp("mgedge_cfg_ok.txt",
                               "# paper defaults\n"
                               "agents=21\n"
                               "cutoff=10\n"
                               "policy=wsls(p=0.005)\n"
                               "rounds = 5000   # inline comment\n"
                               "seed=42\n");
  CliOptions options;
  options.rounds = 1234;
  apply_config_file(path.string(), {"rounds"}, options);  // --rounds was explicit
  CHECK(options.agents == 21);
  CHECK(options.cutoff == 10);
  CHECK(options.policy == "wsls(p=0.005)");
  CHECK(options.rounds == 1234);
  CHECK(options.seed == 42);
  CHECK_NOTHROW(validate_options(options));
}

TEST_CASE("an empty config file leaves the published defaults") {
  const auto path = write_temp("mgedge_cfg_empty.txt", "\n# nothing here\n");
  CliOptions options;
  apply_config_file(path.string(), {}, options);
  CHECK(options.agents == 21);
  CHECK(options.cutoff == 10);
  CHECK(options.rounds == 10000);
  CHECK(options.runs == 32);
  CHECK_NOTHROW(validate_options(options));
}

TEST_CASE("invalid configurations name the offending key") {
  CliOptions options;
  options.agents = 20;
  CHECK_THROWS_WITH_AS(validate_options(options), "agents must be odd", ConfigError);

  options = CliOptions{};
  options.cutoff = 21;
  CHECK_THROWS_WITH_AS(validate_options(options),
                       doctest::Contains("cutoff"), ConfigError);

  options = CliOptions{};
  options.warmup = 9999;
  CHECK_THROWS_WITH_AS(validate_options(options), doctest::Contains("warmup"), ConfigError);

  options = CliOptions{};
  options.policy = "bogus";
  CHECK_THROWS_AS(validate_options(options), ConfigError);

  const auto unknown = write_temp("mgedge_cfg_bad.txt", "agentz=3\n");
  CHECK_THROWS_WITH_AS(apply_config_file(unknown.string(), {}, options),
                       doctest::Contains("agentz"), ConfigError);

  const auto garbled = write_temp("mgedge_cfg_garbled.txt", "agents=twenty\n");
  CHECK_THROWS_WITH_AS(apply_config_file(garbled.string(), {}, options),
                       doctest::Contains("agents"), ConfigError);

  CHECK_THROWS_AS(apply_config_file("/nonexistent/config", {}, options), IoError);
}

TEST_CASE("sweep lists parse as comma-separated integers") {
  CHECK(parse_sweep_list("1,2,3") == std::vector<int>{1, 2, 3});
  CHECK(parse_sweep_list(" 4 , 7 ") == std::vector<int>{4, 7});
  CHECK_THROWS_AS(parse_sweep_list(""), ConfigError);
  CHECK_THROWS_AS(parse_sweep_list("a,b"), ConfigError);
}

TEST_CASE("csv header matches the documented schema") {
  CHECK(csv_header() ==
        "experiment_id,policy,alpha,run_index,volatility,mean_attendance,"
        "avg_utility,qoe_prob,seed,warmup,K,mu,T_deadline");
}

TEST_CASE("rows render reals with 6 significant digits and keep seeds exact") {
  OutputRow row;
  row.experiment_id = "run";
  row.policy = "wsls(p=0.005)";
  row.alpha = std::nullopt;
  row.run_index = 3;
  row.volatility = 0.0123456789;
  row.mean_attendance = 10.4999999;
  row.avg_utility = 0.4761904761904762;
  row.qoe_prob = 1.0 / 3.0;
  row.seed = 18446744073709551615ull;  // max uint64 survives verbatim
  row.warmup = 2000;
  row.tasks_per_round = 50;
  row.mean_task_time = 1.0;
  row.deadline = 10.0;

  const std::string line = to_csv_line(row);
  CHECK(line ==
        "run,wsls(p=0.005),na,3,0.0123457,10.5,0.47619,0.333333,"
        "18446744073709551615,2000,50,1,10");

  // Round-trip: parsing the printed reals and re-rendering reproduces the
  // exact same text.
  const auto fields = split_line(line);
  REQUIRE(fields.size() == 13);
  for (int i : {4, 5, 6, 7}) {
    CHECK(format_real(std::stod(fields[i])) == fields[i]);
  }
  CHECK(std::stoull(fields[8]) == row.seed);
}

TEST_CASE("aggregate rows appear once per sweep point; flat sweeps collapse") {
  ExperimentConfig config;
  config.game = GameConfig{21, 10, 600, 1.0};
  config.policy = parse_policy_spec("wsls(p=0.005)");
  config.runs = 3;
  config.root_seed = 7;
  config.sweep_memory_sizes = std::vector<int>{1, 2, 3};
  const ExperimentReport flat = run_experiment(config);

  config.policy = parse_policy_spec("seminal(S=2)");
  const ExperimentReport swept = run_experiment(config);

  const auto rows = make_rows("sweep", {flat, swept}, config.metrics, config.root_seed);
  // Flat: one row set (3 runs + agg); swept: three points x (3 runs + agg).
  CHECK(rows.size() == 4 + 3 * 4);

  int na_rows = 0, agg_rows = 0;
  for (const OutputRow& row : rows) {
    na_rows += !row.alpha.has_value();
    agg_rows += !row.run_index.has_value();
    if (!row.run_index) CHECK(row.seed == 7);  // aggregate rows carry the root seed
  }
  CHECK(na_rows == 4);
  CHECK(agg_rows == 4);
}

TEST_CASE("results files embed the effective configuration and are reproducible") {
  CliOptions options;
  options.rounds = 500;
  options.runs = 2;
  options.policy = "rotherev(lambda=0.2)";
  options.out_dir = (std::filesystem::temp_directory_path() / "mgedge_csv_test").string();

  auto produce = [&](const std::string& name) {
    const ExperimentReport report = run_experiment(experiment_config(options));
    const auto rows = make_rows("run", {report}, experiment_config(options).metrics,
                                options.seed);
    const auto path = std::filesystem::path(options.out_dir) / name;
    std::filesystem::create_directories(options.out_dir);
    write_results_csv(path.string(),
                      metadata_lines("run", options, {canonical_spec(report.policy)}), rows);
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    return content.str();
  };

  const std::string first = produce("a.csv");
  const std::string second = produce("b.csv");
  CHECK(first == second);
  CHECK(first.find("# agents=21") != std::string::npos);
  CHECK(first.find("# policy=rotherev(lambda=0.2,w0=1)") != std::string::npos);
  CHECK(first.find("# warmup=0") != std::string::npos);
  CHECK(first.find("# tasks-per-round=50") != std::string::npos);
  CHECK(first.find("# task-distribution=exponential") != std::string::npos);
  CHECK(first.find("threads") == std::string::npos);  // execution detail, not config

  CHECK_THROWS_AS(write_results_csv("/nonexistent-dir/x/results.csv", {}, {}), IoError);
}

TEST_CASE("experiment_config carries every option into the harness") {
  CliOptions options;
  options.agents = 11;
  options.cutoff = 5;
  options.rounds = 400;
  options.runs = 3;
  options.seed = 77;
  options.policy = "automata";
  options.warmup = 100;
  options.tasks_per_round = 9;
  options.mean_task_time = 0.5;
  options.deadline = 2.5;
  options.threads = 2;

  const ExperimentConfig config = experiment_config(options);
  CHECK(config.game.num_agents == 11);
  CHECK(config.game.cutoff == 5);
  CHECK(config.game.num_rounds == 400);
  CHECK(config.runs == 3);
  CHECK(config.root_seed == 77);
  CHECK(config.policy.name == "automata");
  CHECK(config.metrics.warmup == 100);
  CHECK(config.metrics.task_model.tasks_per_round == 9);
  CHECK(config.metrics.task_model.mean_task_time == 0.5);
  CHECK(config.metrics.task_model.deadline == 2.5);
  CHECK(config.threads == 2);
}
