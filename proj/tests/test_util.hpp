#pragma once

#include <cmath>
#include <vector>

#include "mgedge/game.hpp"
#include "mgedge/policy.hpp"

namespace mgedge::test {

// Plays a constant action; used to pin round outcomes exactly.
class FixedPolicy : public Policy {
 public:
  explicit FixedPolicy(Action a) : action_(a) {}
  Action select(const WinHistory&, SplitMix64&) override { return action_; }
  void observe(Action, Action, double) override {}

 private:
  Action action_;
};

// Independent oracle: P(sum of `shape` Exp(rate) variables <= t)
//   = 1 - exp(-rate*t) * sum_{k < shape} (rate*t)^k / k!
inline double erlang_cdf(int shape, double rate, double t) {
  const double rt = rate * t;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < shape; ++k) {
    term *= rt / k;
    sum += term;
  }
  return 1.0 - std::exp(-rt) * sum;
}

// Two-pass sample variance (n - 1 denominator), used as the oracle for the
// volatility implementation.
inline double sample_variance(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / (n - 1.0);
}

// Synthetic trace with a fixed per-round action matrix; rewards follow the
// winner rule so metric cross-checks stay consistent.
inline GameTrace make_trace(const GameConfig& config,
                            const std::vector<std::vector<Action>>& rounds) {
  GameTrace trace;
  trace.config = config;
  trace.actions.reserve(rounds.size() * config.num_agents);
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    int attendance = 0;
    for (Action a : rounds[t]) attendance += as_int(a);
    const Action winner = determine_winner(attendance, config.cutoff, config.num_agents);
    RoundOutcome outcome;
    outcome.round_index = static_cast<int>(t);
    outcome.attendance = attendance;
    outcome.winning_action = winner;
    outcome.rewards = assign_rewards(rounds[t], config.num_agents, winner, config.reward);
    trace.outcomes.push_back(std::move(outcome));
    trace.actions.insert(trace.actions.end(), rounds[t].begin(), rounds[t].end());
  }
  return trace;
}

// Constant-attendance trace: agents 0..active-1 play Active every round.
inline GameTrace constant_attendance_trace(const GameConfig& config, int active, int rounds) {
  std::vector<Action> row(config.num_agents, Action::Inactive);
  for (int i = 0; i < active; ++i) row[i] = Action::Active;
  return make_trace(config, std::vector<std::vector<Action>>(rounds, row));
}

}  // namespace mgedge::test
