#pragma once

#include <span>
#include <vector>

#include "nn.hpp"
#include "recognition.hpp"

namespace imagine {

/// Binary end-state detector over root vectors: tells the imagination loop
/// when a rollout has reached the goal.
class Discriminator {
 public:
  Discriminator(int root_dim, int hidden, Rng& rng);

  int root_dim() const { return net_.input_size(); }

  double is_done(std::span<const double> root) const;

  /// One step of binary cross-entropy with the positive class weighted by
  /// the in-batch negatives/positives ratio (1 when there are no positives);
  /// returns the pre-step loss.
  double train_batch(const std::vector<RootVector>& roots, const std::vector<bool>& done_flags,
                     AdamOptimizer& opt);

  DenseNet& net() { return net_; }
  const DenseNet& net() const { return net_; }

 private:
  DenseNet net_;
};

}  // namespace imagine
