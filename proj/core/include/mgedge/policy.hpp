#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mgedge/action.hpp"
#include "mgedge/history.hpp"
#include "mgedge/rng.hpp"

namespace mgedge {

// Per-agent learner. select() sees only the shared winning-action history;
// observe() delivers the agent's own action, the round's winning action and
// the utility it received. Agents never see each other's actions.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual Action select(const WinHistory& history, SplitMix64& rng) = 0;
  virtual void observe(Action own, Action winning, double utility) = 0;

  // Rounds of history the rule conditions on; 0 for memoryless rules.
  virtual int memory_size() const { return 0; }
};

// Parsed `name(key=value,...)` policy description, with defaults filled in.
// Supported rules and their parameters:
//   seminal(S,s,scoring)             exponential(S,s,gamma,scoring)
//   qlearn-action(gamma,eps)         qlearn-strategy(gamma,eps,S,s)
//   adaptive(aplus,aminus,x0,window) wsls(p)
//   rotherev(lambda,w0)              automata(gamma,delta,form)
//   random
struct PolicySpec {
  std::string name;
  std::map<std::string, std::string> params;

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
};

// Parses and validates a spec string; unknown names, unknown keys and
// out-of-range values throw ConfigError. Defaults are filled in so the
// result is the full effective parameterization.
PolicySpec parse_policy_spec(std::string_view text);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, SplitMix64& rng);

// Memory size s for table-based rules, 0 otherwise.
int policy_memory_size(const PolicySpec& spec);

// True for rules that condition on the history through 2^s strategy tables
// (seminal, exponential, qlearn-strategy); these are the rules an alpha
// sweep varies. Everything else produces a flat curve.
bool policy_uses_strategy_tables(const PolicySpec& spec);

PolicySpec override_memory_size(PolicySpec spec, int memory_size);

// `name(key=value,...)` with every effective parameter, stable ordering.
std::string canonical_spec(const PolicySpec& spec);

const std::vector<std::string>& known_policy_names();

}  // namespace mgedge
