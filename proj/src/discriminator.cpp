#include "discriminator.hpp"

#include <stdexcept>

namespace imagine {

Discriminator::Discriminator(int root_dim, int hidden, Rng& rng)
    : net_({root_dim, hidden, 1}, Activation::Sigmoid, rng) {}

double Discriminator::is_done(std::span<const double> root) const {
  return net_.forward(root)[0];
}

double Discriminator::train_batch(const std::vector<RootVector>& roots,
                                  const std::vector<bool>& done_flags, AdamOptimizer& opt) {
  if (roots.empty()) throw std::invalid_argument("empty batch");
  if (roots.size() != done_flags.size()) throw std::invalid_argument("batch size mismatch");
  int positives = 0;
  for (bool d : done_flags) positives += d ? 1 : 0;
  const int negatives = static_cast<int>(roots.size()) - positives;
  const double positive_weight =
      positives > 0 ? static_cast<double>(negatives) / positives : 1.0;
  std::vector<std::vector<double>> inputs(roots.begin(), roots.end());
  std::vector<std::vector<double>> targets;
  std::vector<double> weights;
  targets.reserve(roots.size());
  weights.reserve(roots.size());
  for (bool d : done_flags) {
    targets.push_back({d ? 1.0 : 0.0});
    weights.push_back(d ? positive_weight : 1.0);
  }
  return imagine::train_batch(net_, opt, inputs, targets, Loss::BinaryCrossEntropy, weights);
}

}  // namespace imagine
