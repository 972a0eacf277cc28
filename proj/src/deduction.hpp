#pragma once

#include <span>
#include <vector>

#include "grid.hpp"
#include "nn.hpp"
#include "recognition.hpp"

namespace imagine {

/// One-step latent dynamics model: predicts the next root vector from the
/// current root and a one-hot action. The tanh head keeps predictions inside
/// the recognizer's root codomain.
class DeductionNet {
 public:
  DeductionNet(int root_dim, int hidden, Rng& rng);

  int root_dim() const { return net_.output_size(); }

  RootVector deduce(std::span<const double> root, Action action) const;

  /// One MSE step toward target next-roots; returns the pre-step loss.
  double train_batch(const std::vector<RootVector>& roots, const std::vector<Action>& actions,
                     const std::vector<RootVector>& target_next_roots, AdamOptimizer& opt);

  DenseNet& net() { return net_; }
  const DenseNet& net() const { return net_; }

 private:
  std::vector<double> joined(std::span<const double> root, Action action) const;

  DenseNet net_;
};

}  // namespace imagine
