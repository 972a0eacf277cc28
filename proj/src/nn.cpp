#include "nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imagine {

namespace {

double apply_activation(Activation act, double z) {
  switch (act) {
    case Activation::Linear: return z;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Tanh: return std::tanh(z);
  }
  return z;
}

// Derivative expressed through the activation output.
double activation_grad(Activation act, double a) {
  switch (act) {
    case Activation::Linear: return 1.0;
    case Activation::Sigmoid: return a * (1.0 - a);
    case Activation::Tanh: return 1.0 - a * a;
  }
  return 1.0;
}

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

}  // namespace

DenseNet::DenseNet(std::vector<int> layer_sizes, Activation output_activation, Rng& rng)
    : sizes_(std::move(layer_sizes)), output_act_(output_activation) {
  if (sizes_.size() < 2) throw std::invalid_argument("DenseNet needs at least two layer sizes");
  for (int s : sizes_) {
    if (s <= 0) throw std::invalid_argument("DenseNet layer sizes must be positive");
  }
  const std::size_t n_layers = sizes_.size() - 1;
  layers_.reserve(n_layers);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Layer layer;
    layer.in = sizes_[l];
    layer.out = sizes_[l + 1];
    layer.b.assign(layer.out, 0.0);
    layer.w.assign(static_cast<std::size_t>(layer.out) * layer.in, 0.0);
    if (l + 1 < n_layers) {
      const double bound = std::sqrt(6.0 / (layer.in + layer.out));
      for (double& w : layer.w) w = rng.uniform(-bound, bound);
    }
    // final layer stays all-zero
    layers_.push_back(std::move(layer));
  }
}

std::size_t DenseNet::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers_) n += l.w.size() + l.b.size();
  return n;
}

std::vector<double> DenseNet::parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const Layer& l : layers_) {
    flat.insert(flat.end(), l.w.begin(), l.w.end());
    flat.insert(flat.end(), l.b.begin(), l.b.end());
  }
  return flat;
}

void DenseNet::set_parameters(std::span<const double> flat) {
  if (flat.size() != parameter_count())
    throw std::invalid_argument("parameter vector size mismatch");
  std::size_t off = 0;
  for (Layer& l : layers_) {
    std::copy_n(flat.begin() + off, l.w.size(), l.w.begin());
    off += l.w.size();
    std::copy_n(flat.begin() + off, l.b.size(), l.b.begin());
    off += l.b.size();
  }
}

ForwardCache DenseNet::forward_cached(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_size())
    throw std::invalid_argument("input dimension mismatch");
  ForwardCache cache;
  cache.acts.reserve(layers_.size() + 1);
  cache.acts.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const std::vector<double>& a = cache.acts.back();
    std::vector<double> z = layer.b;
    for (int o = 0; o < layer.out; ++o) {
      const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      double acc = z[o];
      for (int i = 0; i < layer.in; ++i) acc += wrow[i] * a[i];
      z[o] = acc;
    }
    const Activation act = (l + 1 < layers_.size()) ? Activation::Tanh : output_act_;
    for (double& v : z) v = apply_activation(act, v);
    cache.acts.push_back(std::move(z));
  }
  return cache;
}

std::vector<double> DenseNet::forward(std::span<const double> input) const {
  return forward_cached(input).acts.back();
}

void GradBuffer::reset() {
  for (auto& v : dw) std::fill(v.begin(), v.end(), 0.0);
  for (auto& v : db) std::fill(v.begin(), v.end(), 0.0);
}

GradBuffer make_grad_buffer(const DenseNet& net) {
  GradBuffer g;
  for (const Layer& l : net.layers()) {
    g.dw.emplace_back(l.w.size(), 0.0);
    g.db.emplace_back(l.b.size(), 0.0);
  }
  return g;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  const double mx = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

int argmax(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

namespace {

// Loss of one sample plus the delta at the output pre-activation.
double loss_and_output_delta(const DenseNet& net, const std::vector<double>& out,
                             std::span<const double> target, Loss kind,
                             std::vector<double>& dz) {
  const int m = static_cast<int>(out.size());
  if (static_cast<int>(target.size()) != m)
    throw std::invalid_argument("target dimension mismatch");
  dz.assign(m, 0.0);
  double loss = 0.0;
  switch (kind) {
    case Loss::SoftmaxCrossEntropy: {
      if (net.output_activation() != Activation::Linear)
        throw std::invalid_argument("softmax cross-entropy needs a linear head");
      const std::vector<double> p = softmax(out);
      for (int j = 0; j < m; ++j) {
        if (target[j] != 0.0) loss -= target[j] * safe_log(p[j]);
        dz[j] = p[j] - target[j];
      }
      break;
    }
    case Loss::MeanSquaredError: {
      for (int j = 0; j < m; ++j) {
        const double d = out[j] - target[j];
        loss += d * d;
        dz[j] = (2.0 * d / m) * activation_grad(net.output_activation(), out[j]);
      }
      loss /= m;
      break;
    }
    case Loss::BinaryCrossEntropy: {
      if (net.output_activation() != Activation::Sigmoid)
        throw std::invalid_argument("binary cross-entropy needs a sigmoid head");
      for (int j = 0; j < m; ++j) {
        loss -= target[j] * safe_log(out[j]) + (1.0 - target[j]) * safe_log(1.0 - out[j]);
        dz[j] = (out[j] - target[j]) / m;
      }
      loss /= m;
      break;
    }
    case Loss::BinaryKlDivergence: {
      if (net.output_activation() != Activation::Sigmoid)
        throw std::invalid_argument("binary KL divergence needs a sigmoid head");
      for (int j = 0; j < m; ++j) {
        const double t = target[j];
        if (t > 0.0) loss += t * (safe_log(t) - safe_log(out[j]));
        if (t < 1.0) loss += (1.0 - t) * (safe_log(1.0 - t) - safe_log(1.0 - out[j]));
        dz[j] = (out[j] - t) / m;
      }
      loss /= m;
      break;
    }
  }
  return loss;
}

}  // namespace

double backprop_sample(const DenseNet& net, const ForwardCache& cache,
                       std::span<const double> target, Loss kind, double weight,
                       GradBuffer& grads) {
  const auto& layers = net.layers();
  std::vector<double> delta;
  const double loss = loss_and_output_delta(net, cache.acts.back(), target, kind, delta);
  for (int l = static_cast<int>(layers.size()) - 1; l >= 0; --l) {
    const Layer& layer = layers[l];
    const std::vector<double>& a_prev = cache.acts[l];
    double* dw = grads.dw[l].data();
    double* db = grads.db[l].data();
    for (int o = 0; o < layer.out; ++o) {
      const double d = weight * delta[o];
      db[o] += d;
      double* dwrow = dw + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) dwrow[i] += d * a_prev[i];
    }
    if (l > 0) {
      std::vector<double> prev_delta(layer.in, 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double d = delta[o];
        const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
        for (int i = 0; i < layer.in; ++i) prev_delta[i] += wrow[i] * d;
      }
      for (int i = 0; i < layer.in; ++i) prev_delta[i] *= 1.0 - a_prev[i] * a_prev[i];  // tanh hidden
      delta = std::move(prev_delta);
    }
  }
  return loss;
}

double loss_value(const DenseNet& net, std::span<const double> input,
                  std::span<const double> target, Loss kind) {
  const std::vector<double> out = net.forward(input);
  std::vector<double> unused;
  return loss_and_output_delta(net, out, target, kind, unused);
}

AdamOptimizer::AdamOptimizer(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(DenseNet& net, const GradBuffer& grads) {
  auto& layers = net.layers();
  if (mw_.empty()) {
    for (const Layer& l : layers) {
      mw_.emplace_back(l.w.size(), 0.0);
      vw_.emplace_back(l.w.size(), 0.0);
      mb_.emplace_back(l.b.size(), 0.0);
      vb_.emplace_back(l.b.size(), 0.0);
    }
  }
  if (mw_.size() != layers.size()) throw std::invalid_argument("optimizer bound to a different net");
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, t_);
  const double bc2 = 1.0 - std::pow(beta2_, t_);
  const auto update = [&](std::vector<double>& p, const std::vector<double>& g,
                          std::vector<double>& m, std::vector<double>& v) {
    if (p.size() != g.size()) throw std::invalid_argument("gradient shape mismatch");
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * g[i];
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * g[i] * g[i];
      p[i] -= lr_ * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps_);
    }
  };
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].w, grads.dw[l], mw_[l], vw_[l]);
    update(layers[l].b, grads.db[l], mb_[l], vb_[l]);
  }
}

double train_batch(DenseNet& net, AdamOptimizer& opt,
                   const std::vector<std::vector<double>>& inputs,
                   const std::vector<std::vector<double>>& targets, Loss kind,
                   const std::vector<double>& weights) {
  if (inputs.empty()) throw std::invalid_argument("empty batch");
  if (inputs.size() != targets.size()) throw std::invalid_argument("batch size mismatch");
  if (!weights.empty() && weights.size() != inputs.size())
    throw std::invalid_argument("weight count mismatch");
  GradBuffer grads = make_grad_buffer(net);
  const double inv_n = 1.0 / static_cast<double>(inputs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const ForwardCache cache = net.forward_cached(inputs[i]);
    total += w * backprop_sample(net, cache, targets[i], kind, w * inv_n, grads);
  }
  opt.step(net, grads);
  return total * inv_n;
}

double finite_diff_check(const DenseNet& net, std::span<const double> input,
                         std::span<const double> target, Loss kind, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  DenseNet probe = net;
  GradBuffer grads = make_grad_buffer(probe);
  const ForwardCache cache = probe.forward_cached(input);
  backprop_sample(probe, cache, target, kind, 1.0, grads);
  std::vector<double> analytic;
  for (std::size_t l = 0; l < grads.dw.size(); ++l) {
    analytic.insert(analytic.end(), grads.dw[l].begin(), grads.dw[l].end());
    analytic.insert(analytic.end(), grads.db[l].begin(), grads.db[l].end());
  }
  std::vector<double> params = probe.parameters();
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + epsilon;
    probe.set_parameters(params);
    const double up = loss_value(probe, input, target, kind);
    params[i] = saved - epsilon;
    probe.set_parameters(params);
    const double down = loss_value(probe, input, target, kind);
    params[i] = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double rel = std::abs(analytic[i] - numeric) /
                       std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
    worst = std::max(worst, rel);
  }
  probe.set_parameters(params);
  return worst;
}

}  // namespace imagine
