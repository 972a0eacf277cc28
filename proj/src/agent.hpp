#pragma once

#include <vector>

#include "grid.hpp"
#include "rng.hpp"

namespace imagine {

/// Tabular action values. With the 0/1 terminal reward and gamma < 1 every
/// entry stays in [0, 1]. Ties always break toward the lowest action index.
class QTable {
 public:
  QTable(int n_states, double alpha = 0.1, double gamma = 0.9);
  QTable(ActionValues values, double alpha = 0.1, double gamma = 0.9);

  int n_states() const { return static_cast<int>(values_.size()); }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  const ActionValues& values() const { return values_; }
  ActionValues& values() { return values_; }
  const std::array<double, kNumActions>& row(int state) const;

  /// Epsilon-greedy: a uniform action with probability epsilon, otherwise
  /// the greedy one.
  Action select_action(int state, double epsilon, Rng& rng) const;

  /// Standard one-step update: Q(s,a) += alpha * (r + gamma * max Q(s') * (1 - done) - Q(s,a)).
  void update(const Transition& t);

  Action greedy_action(int state) const;
  std::vector<Action> greedy_policy() const;

 private:
  double alpha_;
  double gamma_;
  ActionValues values_;
};

}  // namespace imagine
