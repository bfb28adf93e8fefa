#pragma once

namespace mgedge {

// One repeated-game instance: an odd pool of servers, the activation cutoff,
// and how long the game runs. `reward` is the utility paid to each winner.
struct GameConfig {
  int num_agents = 21;
  int cutoff = 10;
  int num_rounds = 10000;
  double reward = 1.0;

  // Throws ConfigError: num_agents must be odd and positive, 0 < cutoff <
  // num_agents, num_rounds >= 1, reward > 0.
  void validate() const;
};

}  // namespace mgedge
