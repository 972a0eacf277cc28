#pragma once

#include "model.hpp"

namespace imagine {

/// Model quality measured against the environment and its exact oracles.
struct EvalReport {
  int n_states = 0;

  int recognizer_correct = 0;            // classify(render(s)) == s

  int shortest_path_ok = 0;              // greedy rollout length == BFS distance
  int shortest_path_total = 0;

  int q_optimal_matches = 0;             // Q argmax inside the value-iteration optimal set

  int deduction_correct = 0;             // one-step latent prediction recovers the next label
  int deduction_total = 0;

  bool discriminator_all_correct = false;
  double discriminator_goal_min = 0.0;
  double discriminator_nongoal_max = 0.0;

  int imagination_matches = 0;           // exact label-sequence + termination matches
  int imagination_total = 0;
  bool frames_consistent = false;        // decoded argmax pixel = recognized agent cell

  int memory_generation_correct = 0;     // decode(mean root) peaks at the state's cell

  double recognizer_accuracy() const { return ratio(recognizer_correct, n_states); }
  bool shortest_path_exact() const { return shortest_path_ok == shortest_path_total; }
  double q_agreement() const { return ratio(q_optimal_matches, n_states); }
  double deduction_fidelity() const { return ratio(deduction_correct, deduction_total); }
  double imagination_match_rate() const { return ratio(imagination_matches, imagination_total); }
  double memory_generation_rate() const { return ratio(memory_generation_correct, n_states); }

 private:
  static double ratio(int num, int den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
};

/// Exhaustive sweep over states and state-action pairs. Imagination runs at
/// temperature 0 with the model's configured threshold and step cap;
/// stepping "from" the goal is scored against the absorbing convention
/// (next state = goal).
EvalReport evaluate(const Model& model);

}  // namespace imagine
