#pragma once

#include <optional>
#include <vector>

#include "model.hpp"

namespace imagine {

struct ImaginedStep {
  int index = 0;
  RootVector root;
  Screen screen;
  int label = 0;
  double done_prob = 0.0;
  /// Empty only on a discriminator-terminated final step. A step-cap-ended
  /// trajectory records the action that would have been taken next.
  std::optional<Action> action;
};

enum class Termination { DiscriminatorStop, MaxSteps };

struct ImaginedTrajectory {
  int start_state = 0;
  std::vector<ImaginedStep> steps;
  Termination termination = Termination::MaxSteps;
};

struct ImagineOptions {
  int max_steps = 50;
  double done_threshold = 0.5;
  double temperature = 0.0;
  /// Snap each predicted root to the long-term mean of its recognized label.
  /// Off by default so rollouts measure raw deduction fidelity.
  bool reground = false;
};

/// Generates a trajectory with zero environment access: sample the start
/// root from long-term memory, then loop decode -> classify -> done-check ->
/// greedy action -> deduce until the discriminator fires or max_steps
/// actions have been taken. Trajectory length is at most max_steps + 1.
ImaginedTrajectory imagine(const Components& model, int start_state,
                           const ImagineOptions& options, Rng& rng);

struct MatchReport {
  std::vector<int> env_labels;       // real greedy rollout from the same start
  std::vector<int> imagined_labels;
  bool exact_match = false;          // same label sequence and matching termination
  double agreement = 0.0;            // per-step label agreement over the shared prefix
  int length_delta = 0;              // imagined length - env length
  /// Terminal-index difference when both sides reached a natural stop
  /// (discriminator fired / goal entered); empty otherwise.
  std::optional<int> termination_delta;
};

/// Replays the greedy policy in the real environment from the trajectory's
/// start and scores the imagined rollout against it.
MatchReport compare_to_env(const ImaginedTrajectory& traj, const GridSpec& grid,
                           const QTable& qtable, int step_cap);

}  // namespace imagine
