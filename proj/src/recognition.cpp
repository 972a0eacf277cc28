#include "recognition.hpp"

#include <stdexcept>

namespace imagine {

Recognizer::Recognizer(int input_size, int hidden, int root_dim, int n_states, Rng& rng)
    : root_dim_(root_dim),
      n_states_(n_states),
      net_({input_size, hidden, root_dim, n_states}, Activation::Linear, rng) {}

RootVector Recognizer::encode(const Screen& screen) const {
  const ForwardCache cache = net_.forward_cached(screen.pixels);
  return cache.acts[cache.acts.size() - 2];
}

Classification Recognizer::classify(const Screen& screen) const {
  const std::vector<double> logits = net_.forward(screen.pixels);
  Classification c;
  c.probs = softmax(logits);
  c.label = argmax(c.probs);
  return c;
}

Classification Recognizer::classify_root(std::span<const double> root) const {
  if (static_cast<int>(root.size()) != root_dim_)
    throw std::invalid_argument("root dimension mismatch");
  const Layer& head = net_.layers().back();
  std::vector<double> logits = head.b;
  for (int o = 0; o < head.out; ++o) {
    const double* wrow = head.w.data() + static_cast<std::size_t>(o) * head.in;
    double acc = logits[o];
    for (int i = 0; i < head.in; ++i) acc += wrow[i] * root[i];
    logits[o] = acc;
  }
  Classification c;
  c.probs = softmax(logits);
  c.label = argmax(c.probs);
  return c;
}

double Recognizer::train_batch(const std::vector<Screen>& screens,
                               const std::vector<int>& labels, AdamOptimizer& opt) {
  if (screens.empty()) throw std::invalid_argument("empty batch");
  if (screens.size() != labels.size()) throw std::invalid_argument("batch size mismatch");
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> targets;
  inputs.reserve(screens.size());
  targets.reserve(screens.size());
  for (std::size_t i = 0; i < screens.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_states_)
      throw std::invalid_argument("label out of range");
    inputs.push_back(screens[i].pixels);
    std::vector<double> one_hot(n_states_, 0.0);
    one_hot[labels[i]] = 1.0;
    targets.push_back(std::move(one_hot));
  }
  return imagine::train_batch(net_, opt, inputs, targets, Loss::SoftmaxCrossEntropy);
}

}  // namespace imagine
