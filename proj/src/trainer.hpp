#pragma once

#include <functional>
#include <vector>

#include "model.hpp"

namespace imagine {

struct EpisodeMetrics {
  int episode = 0;
  int steps = 0;
  double total_reward = 0.0;
  double epsilon = 0.0;
  double recognizer_loss = 0.0;     // per-episode means over the train steps
  double decoder_loss = 0.0;
  double deduction_loss = 0.0;
  double discriminator_loss = 0.0;
  double recognizer_accuracy = 0.0; // probe over all rendered states
};

struct StepLosses {
  double recognizer = 0.0;
  double decoder = 0.0;
  double deduction = 0.0;
  double discriminator = 0.0;
};

enum class TrainPhase {
  RecognizerStep,
  EncodeRoots,
  MemoryFit,
  DecoderStep,
  DeductionStep,
  DiscriminatorStep,
};

/// Runs the joint loop: collect one epsilon-greedy episode into the
/// per-state queues (updating the Q-table online), then a fixed number of
/// batched component updates. Within a train step the recognizer moves
/// first, the batch is re-encoded, and memory, deduction and discriminator
/// all consume the fresh roots.
class Trainer {
 public:
  explicit Trainer(const TrainConfig& config);

  /// Linear decay from epsilon_start to epsilon_end over the first
  /// decay_fraction of episodes, holding afterwards.
  double epsilon_for_episode(int episode) const;

  /// One episode from the grid's start cell. Every transition carries the
  /// following step's action (the would-be action when the step cap ends the
  /// episode, none on done) and is stored in short-term memory.
  std::vector<Transition> collect_episode(double epsilon);

  /// One balanced batch through all five components; returns pre-step losses.
  StepLosses train_step();

  EpisodeMetrics run_episode(int episode);
  void run();

  double recognizer_accuracy() const;

  const Model& model() const { return model_; }
  Model& model() { return model_; }
  Model take_model() { return std::move(model_); }
  const std::vector<EpisodeMetrics>& metrics() const { return metrics_; }
  ShortTermMemory& memory() { return stm_; }
  const TrainConfig& config() const { return config_; }

  /// Test instrumentation: observes the phase order inside train_step.
  std::function<void(TrainPhase)> phase_hook;

 private:
  TrainConfig config_;
  Model model_;
  ShortTermMemory stm_;
  AdamOptimizer opt_recognizer_;
  AdamOptimizer opt_decoder_;
  AdamOptimizer opt_deduction_;
  AdamOptimizer opt_discriminator_;
  Rng collect_rng_;
  Rng sample_rng_;
  std::vector<EpisodeMetrics> metrics_;
};

struct TrainResult {
  Model model;
  std::vector<EpisodeMetrics> metrics;
};

TrainResult train(const TrainConfig& config);

}  // namespace imagine
