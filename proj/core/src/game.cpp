#include "mgedge/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mgedge/errors.hpp"

namespace mgedge {

std::vector<int> GameTrace::attendance_series() const {
  std::vector<int> series;
  series.reserve(outcomes.size());
  for (const RoundOutcome& o : outcomes) series.push_back(o.attendance);
  return series;
}

Action determine_winner(int attendance, int cutoff, int num_agents) {
  if (cutoff <= 0 || cutoff >= num_agents) {
    throw std::invalid_argument("cutoff must satisfy 0 < cutoff < num_agents");
  }
  if (attendance < 0 || attendance > num_agents) {
    throw std::invalid_argument("attendance out of [0, " + std::to_string(num_agents) + "]");
  }
  return attendance <= cutoff ? Action::Active : Action::Inactive;
}

std::vector<double> assign_rewards(std::span<const Action> actions, int num_agents,
                                   Action winning, double reward) {
  if (static_cast<int>(actions.size()) != num_agents) {
    throw std::invalid_argument("actions length does not match num_agents");
  }
  std::vector<double> rewards(actions.size(), 0.0);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] == winning) rewards[i] = reward;
  }
  return rewards;
}

RoundOutcome play_round(std::span<Agent> agents, WinHistory& history,
                        const GameConfig& config, int round_index,
                        std::span<Action> actions_out) {
  const int m = static_cast<int>(agents.size());
  std::vector<Action> actions(agents.size());

  // All selections happen before any update: simultaneous-move semantics.
  int attendance = 0;
  for (int i = 0; i < m; ++i) {
    actions[i] = agents[i].policy->select(history, agents[i].rng);
    attendance += as_int(actions[i]);
  }

  const Action winner = determine_winner(attendance, config.cutoff, config.num_agents);
  std::vector<double> rewards = assign_rewards(actions, config.num_agents, winner, config.reward);

  for (int i = 0; i < m; ++i) {
    agents[i].policy->observe(actions[i], winner, rewards[i]);
  }
  history.push(winner);

  if (!actions_out.empty()) {
    std::copy(actions.begin(), actions.end(), actions_out.begin());
  }
  return RoundOutcome{round_index, attendance, winner, std::move(rewards)};
}

namespace {

// Stream 0 seeds the shared history; agent i draws from stream i + 1.
constexpr std::uint64_t kHistoryStream = 0;
constexpr std::uint64_t kAgentStreamBase = 1;

}  // namespace

GameTrace run_game(const GameConfig& config, std::span<const PolicySpec> per_agent,
                   std::uint64_t seed) {
  config.validate();
  if (static_cast<int>(per_agent.size()) != config.num_agents) {
    throw ConfigError("need one policy spec per agent");
  }

  const int m = config.num_agents;
  std::vector<Agent> agents;
  agents.reserve(per_agent.size());
  int max_memory = 0;
  for (int i = 0; i < m; ++i) {
    SplitMix64 rng(derive_seed(seed, kAgentStreamBase + static_cast<std::uint64_t>(i)));
    Agent agent{nullptr, rng};
    agent.policy = make_policy(per_agent[i], agent.rng);
    max_memory = std::max(max_memory, agent.policy->memory_size());
    agents.push_back(std::move(agent));
  }

  WinHistory history(max_memory);
  SplitMix64 game_rng(derive_seed(seed, kHistoryStream));
  for (int i = 0; i < max_memory; ++i) history.push(random_action(game_rng));

  GameTrace trace;
  trace.config = config;
  trace.seed = seed;
  trace.outcomes.reserve(config.num_rounds);
  trace.actions.resize(static_cast<std::size_t>(config.num_rounds) * m);

  for (int t = 0; t < config.num_rounds; ++t) {
    std::span<Action> row(trace.actions.data() + static_cast<std::size_t>(t) * m, m);
    trace.outcomes.push_back(play_round(agents, history, config, t, row));
  }
  return trace;
}

GameTrace run_game(const GameConfig& config, const PolicySpec& policy, std::uint64_t seed) {
  std::vector<PolicySpec> specs(static_cast<std::size_t>(config.num_agents), policy);
  return run_game(config, specs, seed);
}

}  // namespace mgedge
