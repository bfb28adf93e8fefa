#include <doctest.h>

#include <numeric>

#include "mgedge/errors.hpp"
#include "mgedge/game.hpp"
#include "mgedge/metrics.hpp"
#include "mgedge/policies.hpp"
#include "test_util.hpp"

using namespace mgedge;
using mgedge::test::FixedPolicy;

TEST_CASE("winner rule: active wins up to and including the cutoff") {
  CHECK(determine_winner(10, 10, 21) == Action::Active);  // tie resolves to active
  CHECK(determine_winner(11, 10, 21) == Action::Inactive);
  CHECK(determine_winner(0, 10, 21) == Action::Active);  // vacuous: no winner gets paid
  CHECK(determine_winner(21, 10, 21) == Action::Inactive);
}

TEST_CASE("winner rule is total: exactly one winning side for every attendance") {
  for (int c = 0; c <= 21; ++c) {
    const Action w = determine_winner(c, 10, 21);
    CHECK((w == Action::Active || w == Action::Inactive));
    CHECK((w == Action::Active) == (c <= 10));
  }
}

TEST_CASE("winner rule rejects out-of-range inputs") {
  CHECK_THROWS_AS(determine_winner(-1, 10, 21), std::invalid_argument);
  CHECK_THROWS_AS(determine_winner(22, 10, 21), std::invalid_argument);
  CHECK_THROWS_AS(determine_winner(5, 0, 21), std::invalid_argument);
  CHECK_THROWS_AS(determine_winner(5, 21, 21), std::invalid_argument);
}

TEST_CASE("rewards go exactly to the winning side") {
  SUBCASE("all inactive, active wins vacuously: nobody is paid") {
    std::vector<Action> actions(21, Action::Inactive);
    const auto rewards = assign_rewards(actions, 21, Action::Active, 1.0);
    CHECK(std::accumulate(rewards.begin(), rewards.end(), 0.0) == 0.0);
  }
  SUBCASE("10 active winners each get the unit reward") {
    std::vector<Action> actions(21, Action::Inactive);
    for (int i = 0; i < 10; ++i) actions[i] = Action::Active;
    const auto rewards = assign_rewards(actions, 21, Action::Active, 1.0);
    for (int i = 0; i < 21; ++i) CHECK(rewards[i] == (i < 10 ? 1.0 : 0.0));
  }
  SUBCASE("15 active / 6 inactive with inactive winning pays the 6") {
    std::vector<Action> actions(21, Action::Active);
    for (int i = 0; i < 6; ++i) actions[i] = Action::Inactive;
    const auto rewards = assign_rewards(actions, 21, Action::Inactive, 1.0);
    double total = 0.0;
    for (int i = 0; i < 21; ++i) {
      CHECK(rewards[i] == (i < 6 ? 1.0 : 0.0));
      total += rewards[i];
    }
    CHECK(total == 6.0);
  }
  SUBCASE("length mismatch is rejected") {
    std::vector<Action> actions(20, Action::Active);
    CHECK_THROWS_AS(assign_rewards(actions, 21, Action::Active, 1.0), std::invalid_argument);
  }
}

namespace {

std::vector<Agent> fixed_agents(const std::vector<Action>& profile, std::uint64_t seed) {
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    agents.push_back(Agent{std::make_unique<FixedPolicy>(profile[i]),
                           SplitMix64(derive_seed(seed, i))});
  }
  return agents;
}

}  // namespace

TEST_CASE("play_round resolves a fixed profile with attendance 10") {
  GameConfig config{21, 10, 1, 1.0};
  std::vector<Action> profile(21, Action::Inactive);
  for (int i = 0; i < 10; ++i) profile[i] = Action::Active;
  auto agents = fixed_agents(profile, 5);
  WinHistory history(0);

  const RoundOutcome o = play_round(agents, history, config, 0);
  CHECK(o.attendance == 10);
  CHECK(o.winning_action == Action::Active);
  int paid = 0;
  for (double r : o.rewards) paid += r == 1.0;
  CHECK(paid == 10);
}

TEST_CASE("WSLS agents that all just won repeat their actions verbatim") {
  GameConfig config{21, 10, 1, 1.0};
  std::vector<Agent> agents;
  for (int i = 0; i < 21; ++i) {
    auto policy = std::make_unique<WslsPolicy>(0.5);
    policy->has_last = true;
    policy->last_won = true;
    policy->last_action = i < 9 ? Action::Active : Action::Inactive;
    agents.push_back(Agent{std::move(policy), SplitMix64(derive_seed(9, i))});
  }
  WinHistory history(0);
  const RoundOutcome first = play_round(agents, history, config, 0);
  CHECK(first.attendance == 9);

  // 9 <= cutoff, so the active nine win again and the profile is absorbing.
  const RoundOutcome second = play_round(agents, history, config, 1);
  CHECK(second.attendance == 9);
  CHECK(second.winning_action == Action::Active);
}

TEST_CASE("random agents produce binomial attendance") {
  GameConfig config{21, 10, 10000, 1.0};
  const GameTrace trace = run_game(config, parse_policy_spec("random"), 2024);

  const auto series = trace.attendance_series();
  double mean = 0.0;
  for (int c : series) mean += c;
  mean /= static_cast<double>(series.size());
  CHECK(mean == doctest::Approx(10.5).epsilon(0.01));  // binomial mean M/2

  // Binomial variance M/4 over M gives volatility 0.25.
  CHECK(volatility(series, 21, 0) == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("run_game is deterministic: same seed, bit-identical traces") {
  GameConfig config{21, 10, 600, 1.0};
  const PolicySpec spec = parse_policy_spec("exponential(S=2,s=3,gamma=100)");
  const GameTrace a = run_game(config, spec, 7);
  const GameTrace b = run_game(config, spec, 7);
  REQUIRE(a.actions == b.actions);
  for (std::size_t t = 0; t < a.outcomes.size(); ++t) {
    CHECK(a.outcomes[t].attendance == b.outcomes[t].attendance);
    CHECK(a.outcomes[t].winning_action == b.outcomes[t].winning_action);
    CHECK(a.outcomes[t].rewards == b.outcomes[t].rewards);
  }
  const GameTrace c = run_game(config, spec, 8);
  CHECK(a.actions != c.actions);
}

TEST_CASE("run_game with a single round") {
  GameConfig config{21, 10, 1, 1.0};
  const GameTrace trace = run_game(config, parse_policy_spec("random"), 3);
  CHECK(trace.outcomes.size() == 1);
  CHECK(trace.actions.size() == 21);
  CHECK(trace.outcomes[0].round_index == 0);
}

TEST_CASE("run_game validates its inputs") {
  GameConfig even{20, 10, 10, 1.0};
  CHECK_THROWS_AS(run_game(even, parse_policy_spec("random"), 1), ConfigError);
  GameConfig config{21, 10, 10, 1.0};
  CHECK_THROWS_AS(run_game(config, parse_policy_spec("nope"), 1), ConfigError);
  std::vector<PolicySpec> too_few(20, parse_policy_spec("random"));
  CHECK_THROWS_AS(run_game(config, too_few, 1), ConfigError);
}

TEST_CASE("trace invariants: attendance matches columns; rewards conserved; winners capped") {
  GameConfig config{21, 10, 2000, 1.0};
  for (const char* name : {"random", "wsls(p=0.1)", "seminal(S=2,s=2)"}) {
    const GameTrace trace = run_game(config, parse_policy_spec(name), 11);
    for (std::size_t t = 0; t < trace.outcomes.size(); ++t) {
      const RoundOutcome& o = trace.outcomes[t];
      int column_sum = 0;
      for (int i = 0; i < 21; ++i) column_sum += as_int(trace.action(static_cast<int>(t), i));
      REQUIRE(o.attendance == column_sum);

      int winners = 0;
      for (int i = 0; i < 21; ++i) {
        const bool won = trace.action(static_cast<int>(t), i) == o.winning_action;
        REQUIRE((o.rewards[i] > 0) == won);
        winners += won;
      }
      const int expected = o.winning_action == Action::Active ? o.attendance : 21 - o.attendance;
      REQUIRE(winners == expected);
      REQUIRE(winners <= 10);  // max(c_th, M - c_th - 1) for M=21, c_th=10
    }
  }
}

TEST_CASE("mixed populations size the history to the largest memory") {
  GameConfig config{5, 2, 50, 1.0};
  std::vector<PolicySpec> specs;
  specs.push_back(parse_policy_spec("seminal(S=2,s=4)"));
  specs.push_back(parse_policy_spec("seminal(S=2,s=1)"));
  specs.push_back(parse_policy_spec("random"));
  specs.push_back(parse_policy_spec("wsls(p=0.01)"));
  specs.push_back(parse_policy_spec("qlearn-strategy(S=2,s=2)"));
  const GameTrace trace = run_game(config, specs, 77);  // must not throw on encode(4)
  CHECK(trace.outcomes.size() == 50);
}
