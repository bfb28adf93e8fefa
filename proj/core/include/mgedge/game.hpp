#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgedge/config.hpp"
#include "mgedge/history.hpp"
#include "mgedge/policy.hpp"

namespace mgedge {

struct RoundOutcome {
  int round_index = 0;
  int attendance = 0;  // number of agents that played Active
  Action winning_action = Action::Inactive;
  std::vector<double> rewards;  // one per agent, 0 or GameConfig::reward
};

struct GameTrace {
  GameConfig config;
  std::uint64_t seed = 0;
  std::vector<RoundOutcome> outcomes;
  std::vector<Action> actions;  // round-major, num_rounds x num_agents

  Action action(int round, int agent) const {
    return actions[static_cast<std::size_t>(round) * config.num_agents + agent];
  }
  std::vector<int> attendance_series() const;
};

// Active wins iff attendance <= cutoff (the tie resolves to active); the
// winning side's agents each get the unit reward. Throws
// std::invalid_argument when attendance is outside [0, num_agents] or the
// cutoff outside (0, num_agents).
Action determine_winner(int attendance, int cutoff, int num_agents);

// rewards[i] = reward if actions[i] == winning else 0. Throws
// std::invalid_argument when actions.size() != num_agents.
std::vector<double> assign_rewards(std::span<const Action> actions, int num_agents,
                                   Action winning, double reward);

struct Agent {
  std::unique_ptr<Policy> policy;
  SplitMix64 rng;
};

// One simultaneous-move round: every agent selects against the same history,
// then the winner is resolved, rewards paid, update hooks run, and the
// winning action is appended to the history. When `actions_out` is non-empty
// it must hold num_agents slots and receives the played actions.
RoundOutcome play_round(std::span<Agent> agents, WinHistory& history,
                        const GameConfig& config, int round_index,
                        std::span<Action> actions_out = {});

// Full deterministic run: identical (config, specs, seed) give bit-identical
// traces. The history is pre-filled with uniformly random winning actions,
// as many as the largest memory size among the agents.
GameTrace run_game(const GameConfig& config, std::span<const PolicySpec> per_agent,
                   std::uint64_t seed);
GameTrace run_game(const GameConfig& config, const PolicySpec& policy, std::uint64_t seed);

}  // namespace mgedge
