#include <stdexcept>
#include <cmath>

#include "doctest.h"

#include "nn.hpp"
#include "rng.hpp"

using namespace imagine;

namespace {

void randomize_all_layers(DenseNet& net, Rng& rng, double scale = 0.5) {
  std::vector<double> params = net.parameters();
  for (double& p : params) p = rng.uniform(-scale, scale);
  net.set_parameters(params);
}

}  // namespace

TEST_CASE("fresh nets emit activation(0) everywhere") {
  Rng rng(1);
  SUBCASE("sigmoid head is exactly 0.5") {
    const DenseNet net({3, 8, 2}, Activation::Sigmoid, rng);
    const auto out = net.forward(std::vector<double>{0.3, -0.7, 1.2});
    for (double v : out) CHECK(v == 0.5);
  }
  SUBCASE("linear head is exactly 0") {
    const DenseNet net({3, 8, 4}, Activation::Linear, rng);
    const auto out = net.forward(std::vector<double>{1.0, 2.0, 3.0});
    for (double v : out) CHECK(v == 0.0);
  }
  SUBCASE("same seed gives identical parameters") {
    Rng a(99);
    Rng b(99);
    const DenseNet na({4, 6, 3}, Activation::Tanh, a);
    const DenseNet nb({4, 6, 3}, Activation::Tanh, b);
    CHECK(na.parameters() == nb.parameters());
  }
  SUBCASE("invalid sizes rejected") {
    Rng r(0);
    CHECK_THROWS_AS(DenseNet({5}, Activation::Linear, r), std::invalid_argument);
    CHECK_THROWS_AS(DenseNet({5, 0, 2}, Activation::Linear, r), std::invalid_argument);
  }
}

TEST_CASE("forward computes the affine-activation chain") {
  Rng rng(2);
  SUBCASE("identity single layer") {
    DenseNet net({3, 3}, Activation::Linear, rng);
    std::vector<double> params(net.parameter_count(), 0.0);
    params[0] = params[4] = params[8] = 1.0;  // 3x3 identity, zero bias
    net.set_parameters(params);
    const std::vector<double> x{0.4, -1.5, 2.25};
    CHECK(net.forward(x) == x);
  }
  SUBCASE("tanh hidden activations stay in (-1, 1)") {
    DenseNet net({4, 16, 2}, Activation::Linear, rng);
    randomize_all_layers(net, rng, 2.0);
    const ForwardCache cache = net.forward_cached(std::vector<double>{3.0, -3.0, 0.5, 1.0});
    for (double v : cache.acts[1]) {
      CHECK(v > -1.0);
      CHECK(v < 1.0);
    }
  }
  SUBCASE("matches an explicitly hand-computed chain") {
    DenseNet net({2, 2, 1}, Activation::Linear, rng);
    // layer 0: w = [[0.5, -0.25], [0.1, 0.2]], b = [0.1, -0.1]
    // layer 1: w = [[1.5, -2.0]], b = [0.25]
    net.set_parameters(std::vector<double>{0.5, -0.25, 0.1, 0.2, 0.1, -0.1, 1.5, -2.0, 0.25});
    const std::vector<double> x{1.0, 2.0};
    const double h0 = std::tanh(0.5 * 1.0 + -0.25 * 2.0 + 0.1);
    const double h1 = std::tanh(0.1 * 1.0 + 0.2 * 2.0 + -0.1);
    const double expected = 1.5 * h0 - 2.0 * h1 + 0.25;
    CHECK(net.forward(x)[0] == doctest::Approx(expected).epsilon(1e-15));
  }
  SUBCASE("forward is pure") {
    DenseNet net({3, 5, 2}, Activation::Sigmoid, rng);
    randomize_all_layers(net, rng);
    const std::vector<double> x{0.1, 0.2, 0.3};
    CHECK(net.forward(x) == net.forward(x));
  }
  SUBCASE("dimension mismatch rejected") {
    DenseNet net({3, 2}, Activation::Linear, rng);
    CHECK_THROWS_AS(net.forward(std::vector<double>{1.0, 2.0}), std::invalid_argument);
  }
}

TEST_CASE("loss values at reference points") {
  Rng rng(3);
  SUBCASE("uniform logits give ln K") {
    const DenseNet net({4, 6, 5}, Activation::Linear, rng);  // zero head -> equal logits
    std::vector<double> one_hot(5, 0.0);
    one_hot[2] = 1.0;
    const double loss =
        loss_value(net, std::vector<double>{1.0, -1.0, 0.5, 0.25}, one_hot, Loss::SoftmaxCrossEntropy);
    CHECK(loss == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  }
  SUBCASE("perfect regression scores zero with zero gradient") {
    DenseNet net({2, 2}, Activation::Linear, rng);
    std::vector<double> params(net.parameter_count(), 0.0);
    params[0] = params[3] = 1.0;
    net.set_parameters(params);
    const std::vector<double> x{0.7, -0.2};
    const ForwardCache cache = net.forward_cached(x);
    GradBuffer grads = make_grad_buffer(net);
    const double loss = backprop_sample(net, cache, x, Loss::MeanSquaredError, 1.0, grads);
    CHECK(loss == 0.0);
    for (const auto& layer : grads.dw) {
      for (double g : layer) CHECK(g == 0.0);
    }
  }
  SUBCASE("balanced binary targets at 0.5 give ln 2") {
    const DenseNet net({3, 4, 1}, Activation::Sigmoid, rng);
    const double loss =
        loss_value(net, std::vector<double>{0.1, 0.2, 0.3}, std::vector<double>{1.0}, Loss::BinaryCrossEntropy);
    CHECK(loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("binary KL is zero at a perfect soft reconstruction") {
    const DenseNet net({3, 4, 2}, Activation::Sigmoid, rng);  // fresh head emits 0.5
    const double loss = loss_value(net, std::vector<double>{0.1, 0.2, 0.3},
                                   std::vector<double>{0.5, 0.5}, Loss::BinaryKlDivergence);
    CHECK(loss == 0.0);
  }
  SUBCASE("binary KL against 0.5 predictions matches the closed form") {
    const DenseNet net({3, 4, 1}, Activation::Sigmoid, rng);
    const double t = 0.25;
    const double expected = t * std::log(t / 0.5) + (1 - t) * std::log((1 - t) / 0.5);
    const double loss = loss_value(net, std::vector<double>{0.1, 0.2, 0.3}, std::vector<double>{t},
                                   Loss::BinaryKlDivergence);
    CHECK(loss == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("mismatched loss/head pairing rejected") {
    const DenseNet sig({2, 2}, Activation::Sigmoid, rng);
    CHECK_THROWS_AS(loss_value(sig, std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0},
                               Loss::SoftmaxCrossEntropy),
                    std::invalid_argument);
    const DenseNet lin({2, 2}, Activation::Linear, rng);
    CHECK_THROWS_AS(loss_value(lin, std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0},
                               Loss::BinaryCrossEntropy),
                    std::invalid_argument);
  }
}

TEST_CASE("softmax normalizes within 1e-9 on random logits") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> logits(1 + rng.uniform_int(10));
    for (double& v : logits) v = rng.uniform(-20.0, 20.0);
    const std::vector<double> p = softmax(logits);
    double sum = 0.0;
    for (double v : p) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(7);
  const double eps = 1e-5;

  const auto check_kind = [&](Loss kind, Activation head, std::vector<double> target) {
    DenseNet net({4, 6, 5, static_cast<int>(target.size())}, head, rng);
    randomize_all_layers(net, rng);
    std::vector<double> input(4);
    for (double& v : input) v = rng.uniform(-1.0, 1.0);
    CHECK(finite_diff_check(net, input, target, kind, eps) < 1e-4);
  };

  SUBCASE("softmax cross-entropy") { check_kind(Loss::SoftmaxCrossEntropy, Activation::Linear, {0, 0, 1}); }
  SUBCASE("mean squared error, tanh head") { check_kind(Loss::MeanSquaredError, Activation::Tanh, {0.3, -0.4, 0.1}); }
  SUBCASE("mean squared error, linear head") { check_kind(Loss::MeanSquaredError, Activation::Linear, {1.5, -2.0}); }
  SUBCASE("binary cross-entropy") { check_kind(Loss::BinaryCrossEntropy, Activation::Sigmoid, {1.0}); }
  SUBCASE("binary KL divergence") { check_kind(Loss::BinaryKlDivergence, Activation::Sigmoid, {0.25, 0.5, 1.0, 0.0}); }
}

TEST_CASE("adam updates") {
  Rng rng(9);
  SUBCASE("zero gradient leaves parameters unchanged") {
    DenseNet net({3, 4, 2}, Activation::Linear, rng);
    randomize_all_layers(net, rng);
    const std::vector<double> before = net.parameters();
    AdamOptimizer opt(1e-2);
    opt.step(net, make_grad_buffer(net));
    CHECK(net.parameters() == before);
  }
  SUBCASE("first step moves by about -lr * sign(gradient)") {
    DenseNet net({2, 2}, Activation::Linear, rng);
    randomize_all_layers(net, rng);
    const std::vector<double> before = net.parameters();
    GradBuffer grads = make_grad_buffer(net);
    Rng gr(17);
    for (auto& layer : grads.dw) {
      for (double& g : layer) g = gr.uniform(-2.0, 2.0);
    }
    for (auto& layer : grads.db) {
      for (double& g : layer) g = gr.uniform(-2.0, 2.0);
    }
    const double lr = 1e-3;
    AdamOptimizer opt(lr);
    opt.step(net, grads);
    const std::vector<double> after = net.parameters();
    std::size_t i = 0;
    const auto check_block = [&](const std::vector<double>& g) {
      for (double gv : g) {
        const double delta = after[i] - before[i];
        CHECK(delta == doctest::Approx(-lr * (gv >= 0 ? 1.0 : -1.0)).epsilon(1e-3));
        ++i;
      }
    };
    check_block(grads.dw[0]);
    check_block(grads.db[0]);
  }
  SUBCASE("loss on a fixed regression batch collapses over 100 steps") {
    DenseNet net({3, 8, 2}, Activation::Linear, rng);
    AdamOptimizer opt(1e-2);
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> targets;
    Rng data(21);
    for (int i = 0; i < 16; ++i) {
      std::vector<double> x(3);
      for (double& v : x) v = data.uniform(-1.0, 1.0);
      targets.push_back({0.5 * x[0] - x[1], x[2]});
      inputs.push_back(std::move(x));
    }
    const double first = train_batch(net, opt, inputs, targets, Loss::MeanSquaredError);
    double last = first;
    for (int k = 0; k < 99; ++k) last = train_batch(net, opt, inputs, targets, Loss::MeanSquaredError);
    CHECK(last < first);
    CHECK(last < 0.5 * first);
  }
}

TEST_CASE("train_batch rejects bad batches") {
  Rng rng(13);
  DenseNet net({2, 2}, Activation::Linear, rng);
  AdamOptimizer opt;
  CHECK_THROWS_AS(train_batch(net, opt, {}, {}, Loss::MeanSquaredError), std::invalid_argument);
  CHECK_THROWS_AS(train_batch(net, opt, {{1.0, 2.0}}, {}, Loss::MeanSquaredError),
                  std::invalid_argument);
}
