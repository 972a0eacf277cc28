#pragma once

#include <span>
#include <vector>

#include "grid.hpp"
#include "nn.hpp"

namespace imagine {

/// The shared latent representation of a state: the recognizer's penultimate
/// tanh activation, so every component works in (-1, 1)^d.
using RootVector = std::vector<double>;

struct Classification {
  int label = 0;
  std::vector<double> probs;
};

/// Screen -> state classifier whose penultimate layer doubles as the root
/// vector shared by memory, deduction and the discriminator.
class Recognizer {
 public:
  Recognizer(int input_size, int hidden, int root_dim, int n_states, Rng& rng);

  int input_size() const { return net_.input_size(); }
  int root_dim() const { return root_dim_; }
  int n_states() const { return n_states_; }

  RootVector encode(const Screen& screen) const;
  Classification classify(const Screen& screen) const;
  /// Applies only the final softmax head, so labels can be read off
  /// generated or predicted roots.
  Classification classify_root(std::span<const double> root) const;

  /// One step of softmax cross-entropy; returns the pre-step loss.
  double train_batch(const std::vector<Screen>& screens, const std::vector<int>& labels,
                     AdamOptimizer& opt);

  DenseNet& net() { return net_; }
  const DenseNet& net() const { return net_; }

 private:
  int root_dim_;
  int n_states_;
  DenseNet net_;
};

}  // namespace imagine
