#include "agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace imagine {

QTable::QTable(int n_states, double alpha, double gamma)
    : alpha_(alpha), gamma_(gamma), values_(n_states, {0.0, 0.0, 0.0, 0.0}) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
}

QTable::QTable(ActionValues values, double alpha, double gamma)
    : alpha_(alpha), gamma_(gamma), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("need at least one state");
}

const std::array<double, kNumActions>& QTable::row(int state) const {
  if (state < 0 || state >= n_states()) throw std::out_of_range("state label out of range");
  return values_[state];
}

Action QTable::select_action(int state, double epsilon, Rng& rng) const {
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon must be in [0,1]");
  if (rng.uniform01() < epsilon) return static_cast<Action>(rng.uniform_int(kNumActions));
  return greedy_action(state);
}

void QTable::update(const Transition& t) {
  if (t.state < 0 || t.state >= n_states() || t.next_state < 0 || t.next_state >= n_states())
    throw std::out_of_range("state label out of range");
  const auto& next_row = values_[t.next_state];
  const double best_next = t.done ? 0.0 : *std::max_element(next_row.begin(), next_row.end());
  double& q = values_[t.state][static_cast<int>(t.action)];
  q += alpha_ * (t.reward + gamma_ * best_next - q);
}

Action QTable::greedy_action(int state) const {
  const auto& r = row(state);
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (r[a] > r[best]) best = a;
  }
  return static_cast<Action>(best);
}

std::vector<Action> QTable::greedy_policy() const {
  std::vector<Action> policy(n_states());
  for (int s = 0; s < n_states(); ++s) policy[s] = greedy_action(s);
  return policy;
}

}  // namespace imagine
