#pragma once

#include <deque>
#include <span>
#include <vector>

#include "grid.hpp"
#include "nn.hpp"
#include "recognition.hpp"
#include "rng.hpp"

namespace imagine {

/// Bounded FIFO of raw transitions per state label. Storing transitions by
/// origin state keeps rare states available to the balanced sampler.
class ShortTermMemory {
 public:
  ShortTermMemory(int n_states, int capacity);

  int n_states() const { return static_cast<int>(queues_.size()); }
  int capacity() const { return capacity_; }
  int size(int state) const;
  int total_size() const;
  const std::deque<Transition>& queue(int state) const;

  void store(const Transition& t);

  /// Each draw picks a uniformly random nonempty queue, then a uniformly
  /// random element in it; batch_size draws with replacement.
  std::vector<Transition> sample_balanced(int batch_size, Rng& rng) const;

 private:
  int capacity_;
  std::vector<std::deque<Transition>> queues_;
};

/// Per-state diagonal Gaussian over root vectors, tracked by exponential
/// moving average so it follows the recognizer as the latent space settles.
class LongTermMemory {
 public:
  LongTermMemory(int n_states, int dim, double ema_rate = 0.05, double variance_floor = 1e-4);

  int n_states() const { return static_cast<int>(fitted_.size()); }
  int dim() const { return dim_; }
  bool fitted(int state) const;
  int update_count(int state) const;

  const RootVector& mean(int state) const;
  const std::vector<double>& variance(int state) const;

  /// Moves the state's mean/variance toward the batch statistics; the first
  /// fit adopts them outright. Variances never drop below the floor.
  void fit(int state, const std::vector<RootVector>& roots);

  /// mean + temperature * sqrt(variance) ⊙ N(0, 1); temperature 0 returns
  /// the mean exactly and draws nothing.
  RootVector generate(int state, double temperature, Rng& rng) const;

  /// Checkpoint restore. A row with any positive variance counts as fitted.
  void load_row(int state, std::span<const double> mean, std::span<const double> variance);

 private:
  void check_state(int state) const;

  int dim_;
  double ema_rate_;
  double variance_floor_;
  std::vector<RootVector> means_;
  std::vector<std::vector<double>> variances_;
  std::vector<int> fitted_;  // update counts
};

/// Root vector -> screen generator: sigmoid head trained with per-pixel
/// binary KL divergence, which is zero at a perfect reconstruction and keeps
/// the output calibrated to soft targets.
class Decoder {
 public:
  Decoder(int root_dim, int hidden, int height, int width, Rng& rng);

  int root_dim() const { return net_.input_size(); }
  int height() const { return height_; }
  int width() const { return width_; }

  Screen decode(std::span<const double> root) const;

  /// One optimizer step toward the target screens; returns the pre-step loss.
  double train_batch(const std::vector<RootVector>& roots,
                     const std::vector<Screen>& targets, AdamOptimizer& opt);

  DenseNet& net() { return net_; }
  const DenseNet& net() const { return net_; }

 private:
  int height_;
  int width_;
  DenseNet net_;
};

}  // namespace imagine
