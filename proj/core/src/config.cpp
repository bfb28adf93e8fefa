#include "mgedge/config.hpp"

#include "mgedge/errors.hpp"

namespace mgedge {

void GameConfig::validate() const {
  if (num_agents <= 0) throw ConfigError("num_agents must be positive");
  if (num_agents % 2 == 0) throw ConfigError("num_agents must be odd");
  if (cutoff <= 0 || cutoff >= num_agents) {
    throw ConfigError("cutoff must satisfy 0 < cutoff < num_agents");
  }
  if (num_rounds < 1) throw ConfigError("num_rounds must be at least 1");
  if (!(reward > 0.0)) throw ConfigError("reward must be positive");
}

}  // namespace mgedge
