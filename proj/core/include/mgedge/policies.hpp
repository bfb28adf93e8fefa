#pragma once

#include <array>
#include <cstdint>
#include <deque>

#include "mgedge/policy.hpp"
#include "mgedge/strategy.hpp"

namespace mgedge {

// Plays the table with the best prediction record. All tables are scored
// every round, whether or not they were played.
class SeminalPolicy : public Policy {
 public:
  SeminalPolicy(int num_strategies, int memory_size, ScoringRule rule, SplitMix64& rng);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;
  int memory_size() const override { return memory_size_; }

  ScoredStrategySet strategies;

 protected:
  int memory_size_;
  ScoringRule rule_;
  std::uint32_t pending_index_ = 0;  // history index captured by the last select()
};

// Samples a table from the softmax of the scores instead of taking the
// argmax. learning_rate = +infinity reproduces SeminalPolicy exactly.
class ExponentialPolicy : public SeminalPolicy {
 public:
  ExponentialPolicy(int num_strategies, int memory_size, double learning_rate,
                    ScoringRule rule, SplitMix64& rng);

  Action select(const WinHistory& history, SplitMix64& rng) override;

  double learning_rate;
};

// Epsilon-greedy over per-action Q-values; Q moves toward the received
// utility with step `step_size`, unplayed action untouched.
class QActionPolicy : public Policy {
 public:
  QActionPolicy(double step_size, double exploration);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;

  std::array<double, 2> q{0.5, 0.5};
  double step_size;
  double exploration;
};

// Epsilon-greedy over per-strategy Q-values; the chosen table then dictates
// the action at the current history.
class QStrategyPolicy : public Policy {
 public:
  QStrategyPolicy(int num_strategies, int memory_size, double step_size,
                  double exploration, SplitMix64& rng);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;
  int memory_size() const override { return memory_size_; }

  std::vector<StrategyTable> tables;
  std::vector<double> q;  // one per strategy, initialized to 0.5

 private:
  int memory_size_;
  double step_size_;
  double exploration_;
  int last_choice_ = 0;
};

// Chooses the action with the highest attractiveness
//   t_a = (1 - x_a) * h_a + x_a * U_a
// where h_a is the fraction of observed rounds action a won (over a sliding
// window, or the whole run when window = 0), U_a is the utility received the
// last time a was played, and the attitude x_a moves up by a_plus on a win
// and down by a_minus on a loss, clamped to [0, 1].
class AdaptivePolicy : public Policy {
 public:
  AdaptivePolicy(double a_plus, double a_minus, double initial_attitude, int window);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;

  double attractiveness(Action a) const;
  double win_fraction(Action a) const;
  long observed_rounds() const { return observed_; }

  std::array<double, 2> attitude;
  std::array<double, 2> last_utility{0.5, 0.5};
  double a_plus;
  double a_minus;

 private:
  int window_;  // 0 = cumulative
  std::deque<Action> recent_winners_;
  std::array<long, 2> win_counts_{0, 0};
  long observed_ = 0;
};

// Win-stay lose-shift: repeat after a win, flip with probability p after a
// loss. First round is uniform random.
class WslsPolicy : public Policy {
 public:
  explicit WslsPolicy(double shift_probability);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;

  double shift_probability;
  bool has_last = false;
  Action last_action = Action::Inactive;
  bool last_won = false;
};

// Keeps a discounted sum of utilities per action and samples proportionally.
//   q_a <- lambda * q_a (+ U when a was played)
class RothErevPolicy : public Policy {
 public:
  RothErevPolicy(double discount, double initial_weight);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;

  // q / sum(q); uniform once the total mass decays below 1e-12.
  std::array<double, 2> selection_probabilities() const;

  std::array<double, 2> weights;
  double discount;
};

enum class AutomataForm {
  // The two-branch update as printed, which loses probability mass delta/2
  // on a loss; the vector is renormalized after every update.
  kVerbatim,
  // Mass-conserving linear reward-penalty: the non-chosen penalty term uses
  // (1 - p) in place of (1/2 - p).
  kStandard,
};

// Learning automaton over an explicit action-probability vector.
// Chosen action a, utility U, reward rate g, penalty rate d:
//   p_a += g*U*(1 - p_a) - d*(1 - U)*p_a
//   p_b -= g*U*p_b;  p_b += d*(1 - U)*(1/2 - p_b)   (kVerbatim)
class AutomataPolicy : public Policy {
 public:
  AutomataPolicy(double reward_rate, double penalty_rate, AutomataForm form);

  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action own, Action winning, double utility) override;

  std::array<double, 2> probabilities{0.5, 0.5};
  double reward_rate;
  double penalty_rate;
  AutomataForm form;
};

class RandomPolicy : public Policy {
 public:
  Action select(const WinHistory& history, SplitMix64& rng) override;
  void observe(Action /*own*/, Action /*winning*/, double /*utility*/) override {}
};

// Shared epsilon-greedy step: with probability `exploration` pick uniformly,
// otherwise argmax with uniform tie-breaking.
int epsilon_greedy(const double* values, int count, double exploration, SplitMix64& rng);

}  // namespace mgedge
