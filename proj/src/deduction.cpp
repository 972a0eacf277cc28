#include "deduction.hpp"

#include <stdexcept>

namespace imagine {

DeductionNet::DeductionNet(int root_dim, int hidden, Rng& rng)
    : net_({root_dim + kNumActions, hidden, hidden, root_dim}, Activation::Tanh, rng) {}

std::vector<double> DeductionNet::joined(std::span<const double> root, Action action) const {
  if (static_cast<int>(root.size()) != root_dim())
    throw std::invalid_argument("root dimension mismatch");
  std::vector<double> in(root.begin(), root.end());
  in.resize(root.size() + kNumActions, 0.0);
  in[root.size() + static_cast<int>(action)] = 1.0;
  return in;
}

RootVector DeductionNet::deduce(std::span<const double> root, Action action) const {
  return net_.forward(joined(root, action));
}

double DeductionNet::train_batch(const std::vector<RootVector>& roots,
                                 const std::vector<Action>& actions,
                                 const std::vector<RootVector>& target_next_roots,
                                 AdamOptimizer& opt) {
  if (roots.empty()) throw std::invalid_argument("empty batch");
  if (roots.size() != actions.size() || roots.size() != target_next_roots.size())
    throw std::invalid_argument("batch size mismatch");
  std::vector<std::vector<double>> inputs;
  inputs.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) inputs.push_back(joined(roots[i], actions[i]));
  std::vector<std::vector<double>> targets(target_next_roots.begin(), target_next_roots.end());
  return imagine::train_batch(net_, opt, inputs, targets, Loss::MeanSquaredError);
}

}  // namespace imagine
