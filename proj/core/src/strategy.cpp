#include "mgedge/strategy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgedge {

StrategyTable generate_strategy_table(int memory_size, SplitMix64& rng) {
  if (memory_size < 1 || memory_size > 16) {
    throw std::invalid_argument("memory size out of [1, 16]");
  }
  StrategyTable table;
  table.memory_size = memory_size;
  table.entries.resize(static_cast<std::size_t>(1) << memory_size);
  for (Action& entry : table.entries) entry = random_action(rng);
  return table;
}

ScoredStrategySet ScoredStrategySet::draw(int num_strategies, int memory_size,
                                          SplitMix64& rng) {
  if (num_strategies < 2) throw std::invalid_argument("need at least 2 strategies");
  ScoredStrategySet set;
  set.strategies.reserve(num_strategies);
  for (int k = 0; k < num_strategies; ++k) {
    set.strategies.push_back(generate_strategy_table(memory_size, rng));
  }
  set.scores.assign(num_strategies, 0.0);
  return set;
}

int ScoredStrategySet::argmax_index(SplitMix64& rng) const {
  double best = -std::numeric_limits<double>::infinity();
  int ties = 0;
  int best_index = 0;
  for (int k = 0; k < size(); ++k) {
    if (scores[k] > best) {
      best = scores[k];
      best_index = k;
      ties = 1;
    } else if (scores[k] == best) {
      ++ties;
    }
  }
  if (ties == 1) return best_index;
  int pick = rng.uniform_int(ties);
  for (int k = 0; k < size(); ++k) {
    if (scores[k] == best && pick-- == 0) return k;
  }
  return best_index;  // unreachable
}

std::vector<double> ScoredStrategySet::softmax_probabilities(double learning_rate) const {
  std::vector<double> probs(scores.size(), 0.0);
  if (std::isinf(learning_rate)) {
    // Limit case: uniform over the argmax set.
    double best = -std::numeric_limits<double>::infinity();
    for (double v : scores) best = std::max(best, v);
    int ties = 0;
    for (double v : scores) ties += v == best;
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (scores[k] == best) probs[k] = 1.0 / ties;
    }
    return probs;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double v : scores) best = std::max(best, v);
  double total = 0.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    probs[k] = std::exp(learning_rate * (scores[k] - best));
    total += probs[k];
  }
  for (double& p : probs) p /= total;
  return probs;
}

int ScoredStrategySet::softmax_index(double learning_rate, SplitMix64& rng) const {
  if (std::isinf(learning_rate)) return argmax_index(rng);
  double best = -std::numeric_limits<double>::infinity();
  for (double v : scores) best = std::max(best, v);
  double total = 0.0;
  for (double v : scores) total += std::exp(learning_rate * (v - best));
  double u = rng.uniform01() * total;
  for (int k = 0; k < size(); ++k) {
    u -= std::exp(learning_rate * (scores[k] - best));
    if (u < 0.0) return k;
  }
  return size() - 1;  // guards against accumulated rounding
}

void ScoredStrategySet::score_round(std::uint32_t history_index, Action winner,
                                    ScoringRule rule) {
  for (int k = 0; k < size(); ++k) {
    const bool correct = strategies[k].at(history_index) == winner;
    if (correct) {
      scores[k] += 1.0;
    } else if (rule == ScoringRule::kPlusMinus) {
      scores[k] -= 1.0;
    }
  }
}

}  // namespace mgedge
