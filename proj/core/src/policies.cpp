#include "mgedge/policies.hpp"

#include <algorithm>
#include <cmath>

namespace mgedge {

int epsilon_greedy(const double* values, int count, double exploration, SplitMix64& rng) {
  if (exploration > 0.0 && rng.uniform01() < exploration) {
    return rng.uniform_int(count);
  }
  double best = -std::numeric_limits<double>::infinity();
  int ties = 0;
  int best_index = 0;
  for (int k = 0; k < count; ++k) {
    if (values[k] > best) {
      best = values[k];
      best_index = k;
      ties = 1;
    } else if (values[k] == best) {
      ++ties;
    }
  }
  if (ties == 1) return best_index;
  int pick = rng.uniform_int(ties);
  for (int k = 0; k < count; ++k) {
    if (values[k] == best && pick-- == 0) return k;
  }
  return best_index;
}

// ---------------------------------------------------------------- seminal

SeminalPolicy::SeminalPolicy(int num_strategies, int memory_size, ScoringRule rule,
                             SplitMix64& rng)
    : strategies(ScoredStrategySet::draw(num_strategies, memory_size, rng)),
      memory_size_(memory_size),
      rule_(rule) {}

Action SeminalPolicy::select(const WinHistory& history, SplitMix64& rng) {
  pending_index_ = history.encode(memory_size_);
  return strategies.strategies[strategies.argmax_index(rng)].at(pending_index_);
}

void SeminalPolicy::observe(Action /*own*/, Action winning, double /*utility*/) {
  // Every table is scored against the pre-round history, played or not.
  strategies.score_round(pending_index_, winning, rule_);
}

// ------------------------------------------------------------ exponential

ExponentialPolicy::ExponentialPolicy(int num_strategies, int memory_size,
                                     double learning_rate, ScoringRule rule,
                                     SplitMix64& rng)
    : SeminalPolicy(num_strategies, memory_size, rule, rng),
      learning_rate(learning_rate) {}

Action ExponentialPolicy::select(const WinHistory& history, SplitMix64& rng) {
  pending_index_ = history.encode(memory_size_);
  return strategies.strategies[strategies.softmax_index(learning_rate, rng)].at(pending_index_);
}

// ------------------------------------------------------------- Q-learning

QActionPolicy::QActionPolicy(double step_size, double exploration)
    : step_size(step_size), exploration(exploration) {}

Action QActionPolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  return static_cast<Action>(epsilon_greedy(q.data(), 2, exploration, rng));
}

void QActionPolicy::observe(Action own, Action /*winning*/, double utility) {
  double& value = q[as_int(own)];
  value += step_size * (utility - value);
}

QStrategyPolicy::QStrategyPolicy(int num_strategies, int memory_size, double step_size,
                                 double exploration, SplitMix64& rng)
    : memory_size_(memory_size), step_size_(step_size), exploration_(exploration) {
  tables.reserve(num_strategies);
  for (int k = 0; k < num_strategies; ++k) {
    tables.push_back(generate_strategy_table(memory_size, rng));
  }
  q.assign(num_strategies, 0.5);
}

Action QStrategyPolicy::select(const WinHistory& history, SplitMix64& rng) {
  last_choice_ = epsilon_greedy(q.data(), static_cast<int>(q.size()), exploration_, rng);
  return tables[last_choice_].at(history.encode(memory_size_));
}

void QStrategyPolicy::observe(Action /*own*/, Action /*winning*/, double utility) {
  double& value = q[last_choice_];
  value += step_size_ * (utility - value);
}

// --------------------------------------------------------------- adaptive

AdaptivePolicy::AdaptivePolicy(double a_plus, double a_minus, double initial_attitude,
                               int window)
    : attitude{initial_attitude, initial_attitude},
      a_plus(a_plus),
      a_minus(a_minus),
      window_(window) {}

double AdaptivePolicy::win_fraction(Action a) const {
  if (observed_ == 0) return 0.0;
  return static_cast<double>(win_counts_[as_int(a)]) / static_cast<double>(observed_);
}

double AdaptivePolicy::attractiveness(Action a) const {
  const int i = as_int(a);
  return (1.0 - attitude[i]) * win_fraction(a) + attitude[i] * last_utility[i];
}

Action AdaptivePolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  if (observed_ == 0) return random_action(rng);
  const double t_inactive = attractiveness(Action::Inactive);
  const double t_active = attractiveness(Action::Active);
  if (t_active == t_inactive) return random_action(rng);
  return t_active > t_inactive ? Action::Active : Action::Inactive;
}

void AdaptivePolicy::observe(Action own, Action winning, double utility) {
  const int i = as_int(own);
  if (own == winning) {
    attitude[i] = std::min(1.0, attitude[i] + a_plus);
  } else {
    attitude[i] = std::max(0.0, attitude[i] - a_minus);
  }
  last_utility[i] = utility;

  ++win_counts_[as_int(winning)];
  ++observed_;
  if (window_ > 0) {
    recent_winners_.push_back(winning);
    if (static_cast<int>(recent_winners_.size()) > window_) {
      --win_counts_[as_int(recent_winners_.front())];
      --observed_;
      recent_winners_.pop_front();
    }
  }
}

// ------------------------------------------------------------------- WSLS

WslsPolicy::WslsPolicy(double shift_probability) : shift_probability(shift_probability) {}

Action WslsPolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  if (!has_last) return random_action(rng);
  if (last_won) return last_action;
  return rng.bernoulli(shift_probability) ? other(last_action) : last_action;
}

void WslsPolicy::observe(Action own, Action winning, double /*utility*/) {
  has_last = true;
  last_action = own;
  last_won = own == winning;
}

// -------------------------------------------------------------- Roth-Erev

RothErevPolicy::RothErevPolicy(double discount, double initial_weight)
    : weights{initial_weight, initial_weight}, discount(discount) {}

std::array<double, 2> RothErevPolicy::selection_probabilities() const {
  const double total = weights[0] + weights[1];
  if (total < 1e-12) return {0.5, 0.5};
  return {weights[0] / total, weights[1] / total};
}

Action RothErevPolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  const auto probs = selection_probabilities();
  return rng.uniform01() < probs[1] ? Action::Active : Action::Inactive;
}

void RothErevPolicy::observe(Action own, Action /*winning*/, double utility) {
  weights[0] *= discount;
  weights[1] *= discount;
  weights[as_int(own)] += utility;
}

// --------------------------------------------------------------- automata

AutomataPolicy::AutomataPolicy(double reward_rate, double penalty_rate, AutomataForm form)
    : reward_rate(reward_rate), penalty_rate(penalty_rate), form(form) {}

Action AutomataPolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  return rng.uniform01() < probabilities[1] ? Action::Active : Action::Inactive;
}

void AutomataPolicy::observe(Action own, Action /*winning*/, double utility) {
  const int chosen = as_int(own);
  const int rest = 1 - chosen;
  const double u = utility;
  const double p_chosen = probabilities[chosen];
  const double p_rest = probabilities[rest];

  probabilities[chosen] = p_chosen + reward_rate * u * (1.0 - p_chosen)
                          - penalty_rate * (1.0 - u) * p_chosen;
  const double penalty_target = form == AutomataForm::kVerbatim ? 0.5 - p_rest : 1.0 - p_rest;
  probabilities[rest] = p_rest - reward_rate * u * p_rest
                        + penalty_rate * (1.0 - u) * penalty_target;

  // The printed penalty branch does not conserve probability mass for two
  // actions (the raw sum is 1 - delta/2 after a loss), so clamp and
  // renormalize after every update.
  probabilities[0] = std::clamp(probabilities[0], 0.0, 1.0);
  probabilities[1] = std::clamp(probabilities[1], 0.0, 1.0);
  const double total = probabilities[0] + probabilities[1];
  probabilities[0] /= total;
  probabilities[1] /= total;
}

// ----------------------------------------------------------------- random

Action RandomPolicy::select(const WinHistory& /*history*/, SplitMix64& rng) {
  return random_action(rng);
}

}  // namespace mgedge
