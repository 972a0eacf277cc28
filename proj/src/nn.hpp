#pragma once

#include <span>
#include <vector>

#include "rng.hpp"

namespace imagine {

enum class Activation { Linear, Sigmoid, Tanh };

// BinaryKlDivergence is the soft-target form of binary cross-entropy with
// the target entropy subtracted: zero at a perfect reconstruction, valid for
// targets anywhere in [0, 1], and its logit gradient (o - t) does not vanish
// when the sigmoid saturates the way MSE's does.
enum class Loss { SoftmaxCrossEntropy, MeanSquaredError, BinaryCrossEntropy, BinaryKlDivergence };

struct Layer {
  int in = 0;
  int out = 0;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;  // out
};

struct ForwardCache {
  std::vector<std::vector<double>> acts;  // acts[0] = input, acts.back() = output
  const std::vector<double>& output() const { return acts.back(); }
};

/// Dense feed-forward stack: tanh on hidden layers, a configurable output
/// activation. Hidden weights start Glorot-uniform, the final layer starts
/// all-zero, so a fresh net emits activation(0) for every input.
class DenseNet {
 public:
  DenseNet(std::vector<int> layer_sizes, Activation output_activation, Rng& rng);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }
  Activation output_activation() const { return output_act_; }

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  std::size_t parameter_count() const;
  /// Flat parameter vector: per layer, weights row-major then biases.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);

  ForwardCache forward_cached(std::span<const double> input) const;
  std::vector<double> forward(std::span<const double> input) const;

 private:
  std::vector<int> sizes_;
  Activation output_act_;
  std::vector<Layer> layers_;
};

struct GradBuffer {
  std::vector<std::vector<double>> dw;
  std::vector<std::vector<double>> db;
  void reset();
};

GradBuffer make_grad_buffer(const DenseNet& net);

std::vector<double> softmax(std::span<const double> logits);

/// Lowest index wins ties.
int argmax(std::span<const double> values);

/// Loss of one sample and its exact parameter gradients, accumulated into
/// `grads` scaled by `weight`. SoftmaxCrossEntropy requires a linear head
/// (targets are one-hot or general distributions); BinaryCrossEntropy
/// requires a sigmoid head. Returns the unweighted sample loss.
double backprop_sample(const DenseNet& net, const ForwardCache& cache,
                       std::span<const double> target, Loss kind, double weight,
                       GradBuffer& grads);

/// Loss alone, no gradients. The scalar finite differencing probes.
double loss_value(const DenseNet& net, std::span<const double> input,
                  std::span<const double> target, Loss kind);

/// Adaptive-moment update with bias correction. Moment buffers attach to the
/// first net it steps.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8);

  void step(DenseNet& net, const GradBuffer& grads);

  int step_count() const { return t_; }
  double learning_rate() const { return lr_; }
  void set_learning_rate(double lr) { lr_ = lr; }

 private:
  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
  std::vector<std::vector<double>> mw_, vw_, mb_, vb_;
};

/// One optimizer step on the mean (optionally per-sample-weighted) loss over
/// the batch; returns the pre-step loss.
double train_batch(DenseNet& net, AdamOptimizer& opt,
                   const std::vector<std::vector<double>>& inputs,
                   const std::vector<std::vector<double>>& targets, Loss kind,
                   const std::vector<double>& weights = {});

/// Max discrepancy between analytic gradients and central finite differences
/// over every parameter: |ga - gn| / max(1, |ga|, |gn|).
double finite_diff_check(const DenseNet& net, std::span<const double> input,
                         std::span<const double> target, Loss kind, double epsilon);

}  // namespace imagine
