#include "engine.hpp"

#include <stdexcept>

namespace imagine {

ImaginedTrajectory imagine(const Components& model, int start_state,
                           const ImagineOptions& options, Rng& rng) {
  if (options.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (!(options.done_threshold > 0.0 && options.done_threshold < 1.0))
    throw std::invalid_argument("done_threshold must be in (0,1)");
  if (!model.ltm.fitted(start_state))
    throw std::invalid_argument("start state has no fitted distribution");

  ImaginedTrajectory traj;
  traj.start_state = start_state;
  RootVector v = model.ltm.generate(start_state, options.temperature, rng);
  for (int index = 0;; ++index) {
    ImaginedStep step;
    step.index = index;
    step.root = v;
    step.screen = model.decoder.decode(v);
    step.label = model.recognizer.classify_root(v).label;
    step.done_prob = model.discriminator.is_done(v);
    if (step.done_prob >= options.done_threshold) {
      traj.steps.push_back(std::move(step));
      traj.termination = Termination::DiscriminatorStop;
      break;
    }
    const Action action = model.qtable.greedy_action(step.label);
    step.action = action;
    traj.steps.push_back(std::move(step));
    if (index == options.max_steps) {
      traj.termination = Termination::MaxSteps;
      break;
    }
    v = model.deduction.deduce(v, action);
    if (options.reground) {
      const int label = model.recognizer.classify_root(v).label;
      if (model.ltm.fitted(label)) v = model.ltm.mean(label);
    }
  }
  return traj;
}

MatchReport compare_to_env(const ImaginedTrajectory& traj, const GridSpec& grid,
                           const QTable& qtable, int step_cap) {
  const StateIndex states(grid);
  MatchReport report;

  Cell pos = states.cell(traj.start_state);
  report.env_labels.push_back(traj.start_state);
  bool env_reached_goal = pos == grid.goal;
  for (int k = 0; k < step_cap && !env_reached_goal; ++k) {
    const Action a = qtable.greedy_action(states.label(pos));
    const StepResult r = step(grid, pos, a);
    pos = r.next;
    report.env_labels.push_back(states.label(pos));
    env_reached_goal = r.done;
  }

  report.imagined_labels.reserve(traj.steps.size());
  for (const ImaginedStep& s : traj.steps) report.imagined_labels.push_back(s.label);

  const bool imagined_stopped = traj.termination == Termination::DiscriminatorStop;
  report.exact_match =
      report.imagined_labels == report.env_labels && imagined_stopped == env_reached_goal;
  const std::size_t shared = std::min(report.imagined_labels.size(), report.env_labels.size());
  int agree = 0;
  for (std::size_t i = 0; i < shared; ++i) {
    if (report.imagined_labels[i] == report.env_labels[i]) ++agree;
  }
  report.agreement = shared == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(shared);
  report.length_delta =
      static_cast<int>(report.imagined_labels.size()) - static_cast<int>(report.env_labels.size());
  if (imagined_stopped && env_reached_goal) {
    report.termination_delta = static_cast<int>(report.imagined_labels.size()) -
                               static_cast<int>(report.env_labels.size());
  }
  return report;
}

}  // namespace imagine
