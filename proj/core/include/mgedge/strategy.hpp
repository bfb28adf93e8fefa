#pragma once

#include <cstdint>
#include <vector>

#include "mgedge/action.hpp"
#include "mgedge/rng.hpp"

namespace mgedge {

// Lookup table from the last s winning actions (see WinHistory::encode) to a
// prescribed action. Entries are drawn i.i.d. uniform, with replacement from
// the 2^(2^s) possible tables.
struct StrategyTable {
  int memory_size = 0;
  std::vector<Action> entries;  // 2^memory_size

  Action at(std::uint32_t index) const { return entries[index]; }
};

// Throws std::invalid_argument unless 1 <= memory_size <= 16.
StrategyTable generate_strategy_table(int memory_size, SplitMix64& rng);

enum class ScoringRule {
  kWinOnly,    // +1 for a correct prediction, 0 otherwise (default)
  kPlusMinus,  // +1 / -1
};

// A hand of strategy tables plus their running virtual scores. Scores count
// prediction accuracy against the public winning sequence, independent of
// which table was actually played.
struct ScoredStrategySet {
  std::vector<StrategyTable> strategies;
  std::vector<double> scores;

  static ScoredStrategySet draw(int num_strategies, int memory_size, SplitMix64& rng);

  int size() const { return static_cast<int>(strategies.size()); }

  // Highest score wins; ties broken uniformly at random.
  int argmax_index(SplitMix64& rng) const;

  // Samples strategy k with probability exp(g*V_k) / sum_j exp(g*V_j),
  // computed with max-score subtraction so large scores cannot overflow.
  // learning_rate = 0 is exactly uniform; +infinity falls back to argmax.
  int softmax_index(double learning_rate, SplitMix64& rng) const;
  std::vector<double> softmax_probabilities(double learning_rate) const;

  // Credits every table whose prediction at `history_index` matched.
  void score_round(std::uint32_t history_index, Action winner, ScoringRule rule);
};

}  // namespace mgedge
