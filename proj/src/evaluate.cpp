#include "evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "engine.hpp"

namespace imagine {

namespace {

/// Next label under the environment's dynamics, with the goal absorbing.
int oracle_next_label(const GridSpec& grid, const StateIndex& states, int state, Action action) {
  const Cell pos = states.cell(state);
  if (pos == grid.goal) return state;
  return states.label(step(grid, pos, action).next);
}

}  // namespace

EvalReport evaluate(const Model& model) {
  const GridSpec& grid = model.config.grid;
  const StateIndex& states = model.states;
  const int n = states.size();
  const int goal = states.label(grid.goal);

  EvalReport report;
  report.n_states = n;

  // Recognition over every rendered state.
  std::vector<RootVector> roots(n);
  for (int s = 0; s < n; ++s) {
    const Screen screen = render(grid, states.cell(s));
    roots[s] = model.recognizer.encode(screen);
    if (model.recognizer.classify(screen).label == s) ++report.recognizer_correct;
  }

  // Greedy rollouts against exact BFS distances.
  const std::vector<int> distances = bfs_distances(grid);
  for (int s = 0; s < n; ++s) {
    if (s == goal) continue;
    ++report.shortest_path_total;
    const int expected = distances[states.flat(states.cell(s))];
    if (expected == kUnreachable) continue;
    Cell pos = states.cell(s);
    int taken = 0;
    bool reached = false;
    while (taken < expected + 1) {
      const StepResult r = step(grid, pos, model.qtable.greedy_action(states.label(pos)));
      pos = r.next;
      ++taken;
      if (r.done) {
        reached = true;
        break;
      }
    }
    if (reached && taken == expected) ++report.shortest_path_ok;
  }

  // Q argmax against the dynamic-programming optimal action set.
  const ActionValues q_star = value_iteration(grid, model.config.q_gamma, 1e-9);
  for (int s = 0; s < n; ++s) {
    const auto& row = q_star[s];
    const double best = *std::max_element(row.begin(), row.end());
    const int chosen = static_cast<int>(model.qtable.greedy_action(s));
    if (row[chosen] >= best - 1e-6) ++report.q_optimal_matches;
  }

  // One-step deduction fidelity over every (state, action) pair.
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < kNumActions; ++a) {
      ++report.deduction_total;
      const RootVector predicted = model.deduction.deduce(roots[s], static_cast<Action>(a));
      const int expected = oracle_next_label(grid, states, s, static_cast<Action>(a));
      if (model.recognizer.classify_root(predicted).label == expected) ++report.deduction_correct;
    }
  }

  // Discriminator, exhaustively, with the separation margin.
  double goal_min = 1.0;
  double nongoal_max = 0.0;
  bool all_correct = true;
  for (int s = 0; s < n; ++s) {
    const double p = model.discriminator.is_done(roots[s]);
    if (s == goal) {
      goal_min = std::min(goal_min, p);
      if (!(p > 0.5)) all_correct = false;
    } else {
      nongoal_max = std::max(nongoal_max, p);
      if (!(p < 0.5)) all_correct = false;
    }
  }
  report.discriminator_all_correct = all_correct && goal_min > nongoal_max;
  report.discriminator_goal_min = goal_min;
  report.discriminator_nongoal_max = nongoal_max;

  // Imagination: exact matches against real greedy rollouts, plus frame
  // consistency on the matching trajectories.
  ImagineOptions options;
  options.max_steps = model.config.imagine_max_steps;
  options.done_threshold = model.config.imagine_done_threshold;
  options.temperature = 0.0;
  bool frames_ok = true;
  Rng rng(0);  // unused at temperature 0
  for (int s = 0; s < n; ++s) {
    if (s == goal) continue;
    ++report.imagination_total;
    if (!model.ltm.fitted(s)) continue;
    const ImaginedTrajectory traj = imagine(model.components(), s, options, rng);
    const MatchReport match = compare_to_env(traj, grid, model.qtable, options.max_steps);
    if (!match.exact_match) continue;
    ++report.imagination_matches;
    for (const ImaginedStep& step : traj.steps) {
      const Cell cell = states.cell(step.label);
      const int peak = argmax(step.screen.pixels);
      if (peak != states.flat(cell)) frames_ok = false;
    }
  }
  report.frames_consistent = frames_ok;

  // Generation from long-term memory at temperature 0.
  for (int s = 0; s < n; ++s) {
    if (!model.ltm.fitted(s)) continue;
    const Screen decoded = model.decoder.decode(model.ltm.generate(s, 0.0, rng));
    if (argmax(decoded.pixels) == states.flat(states.cell(s))) ++report.memory_generation_correct;
  }

  return report;
}

}  // namespace imagine
