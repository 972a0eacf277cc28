#include "memory.hpp"

#include <cmath>
#include <stdexcept>

namespace imagine {

ShortTermMemory::ShortTermMemory(int n_states, int capacity) : capacity_(capacity) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
  if (capacity < 1) throw std::invalid_argument("capacity must be positive");
  queues_.resize(n_states);
}

int ShortTermMemory::size(int state) const { return static_cast<int>(queue(state).size()); }

int ShortTermMemory::total_size() const {
  int n = 0;
  for (const auto& q : queues_) n += static_cast<int>(q.size());
  return n;
}

const std::deque<Transition>& ShortTermMemory::queue(int state) const {
  if (state < 0 || state >= n_states()) throw std::out_of_range("state label out of range");
  return queues_[state];
}

void ShortTermMemory::store(const Transition& t) {
  if (t.state < 0 || t.state >= n_states()) throw std::out_of_range("state label out of range");
  auto& q = queues_[t.state];
  q.push_back(t);
  if (static_cast<int>(q.size()) > capacity_) q.pop_front();
}

std::vector<Transition> ShortTermMemory::sample_balanced(int batch_size, Rng& rng) const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be positive");
  std::vector<int> nonempty;
  for (int s = 0; s < n_states(); ++s) {
    if (!queues_[s].empty()) nonempty.push_back(s);
  }
  if (nonempty.empty()) throw std::invalid_argument("all queues empty");
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (int i = 0; i < batch_size; ++i) {
    const auto& q = queues_[nonempty[rng.uniform_int(static_cast<int>(nonempty.size()))]];
    batch.push_back(q[rng.uniform_int(static_cast<int>(q.size()))]);
  }
  return batch;
}

LongTermMemory::LongTermMemory(int n_states, int dim, double ema_rate, double variance_floor)
    : dim_(dim), ema_rate_(ema_rate), variance_floor_(variance_floor) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (!(ema_rate > 0.0 && ema_rate <= 1.0)) throw std::invalid_argument("ema rate must be in (0,1]");
  means_.assign(n_states, RootVector(dim, 0.0));
  variances_.assign(n_states, std::vector<double>(dim, 0.0));
  fitted_.assign(n_states, 0);
}

void LongTermMemory::check_state(int state) const {
  if (state < 0 || state >= n_states()) throw std::out_of_range("state label out of range");
}

bool LongTermMemory::fitted(int state) const {
  check_state(state);
  return fitted_[state] > 0;
}

int LongTermMemory::update_count(int state) const {
  check_state(state);
  return fitted_[state];
}

const RootVector& LongTermMemory::mean(int state) const {
  check_state(state);
  if (fitted_[state] == 0) throw std::invalid_argument("state has no fitted distribution");
  return means_[state];
}

const std::vector<double>& LongTermMemory::variance(int state) const {
  check_state(state);
  if (fitted_[state] == 0) throw std::invalid_argument("state has no fitted distribution");
  return variances_[state];
}

void LongTermMemory::fit(int state, const std::vector<RootVector>& roots) {
  check_state(state);
  if (roots.empty()) throw std::invalid_argument("empty root batch");
  for (const RootVector& r : roots) {
    if (static_cast<int>(r.size()) != dim_) throw std::invalid_argument("root dimension mismatch");
  }
  const double inv_n = 1.0 / static_cast<double>(roots.size());
  std::vector<double> batch_mean(dim_, 0.0);
  for (const RootVector& r : roots) {
    for (int j = 0; j < dim_; ++j) batch_mean[j] += r[j];
  }
  for (double& v : batch_mean) v *= inv_n;
  std::vector<double> batch_var(dim_, 0.0);
  for (const RootVector& r : roots) {
    for (int j = 0; j < dim_; ++j) {
      const double d = r[j] - batch_mean[j];
      batch_var[j] += d * d;
    }
  }
  for (double& v : batch_var) v *= inv_n;

  auto& mean = means_[state];
  auto& var = variances_[state];
  if (fitted_[state] == 0) {
    mean = std::move(batch_mean);
    var = std::move(batch_var);
  } else {
    for (int j = 0; j < dim_; ++j) {
      mean[j] += ema_rate_ * (batch_mean[j] - mean[j]);
      var[j] += ema_rate_ * (batch_var[j] - var[j]);
    }
  }
  for (double& v : var) v = std::max(v, variance_floor_);
  ++fitted_[state];
}

RootVector LongTermMemory::generate(int state, double temperature, Rng& rng) const {
  const RootVector& m = mean(state);
  if (temperature == 0.0) return m;
  const std::vector<double>& var = variances_[state];
  RootVector out(dim_);
  for (int j = 0; j < dim_; ++j) out[j] = m[j] + temperature * std::sqrt(var[j]) * rng.gauss();
  return out;
}

void LongTermMemory::load_row(int state, std::span<const double> mean,
                              std::span<const double> variance) {
  check_state(state);
  if (static_cast<int>(mean.size()) != dim_ || static_cast<int>(variance.size()) != dim_)
    throw std::invalid_argument("row dimension mismatch");
  means_[state].assign(mean.begin(), mean.end());
  variances_[state].assign(variance.begin(), variance.end());
  bool any = false;
  for (double v : variance) any = any || v > 0.0;
  fitted_[state] = any ? 1 : 0;
}

Decoder::Decoder(int root_dim, int hidden, int height, int width, Rng& rng)
    : height_(height), width_(width), net_({root_dim, hidden, height * width}, Activation::Sigmoid, rng) {}

Screen Decoder::decode(std::span<const double> root) const {
  Screen s{height_, width_, net_.forward(root)};
  return s;
}

double Decoder::train_batch(const std::vector<RootVector>& roots,
                            const std::vector<Screen>& targets, AdamOptimizer& opt) {
  if (roots.empty()) throw std::invalid_argument("empty batch");
  if (roots.size() != targets.size()) throw std::invalid_argument("batch size mismatch");
  std::vector<std::vector<double>> inputs(roots.begin(), roots.end());
  std::vector<std::vector<double>> flat;
  flat.reserve(targets.size());
  for (const Screen& t : targets) flat.push_back(t.pixels);
  // KL rather than MSE: an MSE gradient dies with the sigmoid's slope, which
  // can permanently pin a rarely-positive pixel near zero.
  return imagine::train_batch(net_, opt, inputs, flat, Loss::BinaryKlDivergence);
}

}  // namespace imagine
