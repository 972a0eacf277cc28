#include <stdexcept>
#include <cmath>

#include "doctest.h"

#include "grid.hpp"
#include "recognition.hpp"

using namespace imagine;

namespace {

Recognizer make_recognizer(int n_states = 9, unsigned seed = 4) {
  Rng rng(seed);
  return Recognizer(9, 16, 8, n_states, rng);
}

Screen random_screen(Rng& rng) {
  Screen s{3, 3, std::vector<double>(9)};
  for (double& p : s.pixels) p = rng.uniform01();
  return s;
}

}  // namespace

TEST_CASE("encode yields a bounded root of the right dimension") {
  const Recognizer rec = make_recognizer();
  const GridSpec grid{3, 3, {}, {0, 0}, {2, 2}};
  const RootVector root = rec.encode(render(grid, {1, 1}));
  CHECK(root.size() == 8);
  for (double v : root) {
    CHECK(v > -1.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("untrained recognizer is exactly uniform with label 0") {
  const Recognizer rec = make_recognizer();
  const GridSpec grid{3, 3, {}, {0, 0}, {2, 2}};
  const Classification c = rec.classify(render(grid, {2, 1}));
  CHECK(c.label == 0);
  for (double p : c.probs) CHECK(p == 1.0 / 9.0);
}

TEST_CASE("classify factors through encode and classify_root") {
  const Recognizer rec = make_recognizer();
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Screen s = random_screen(rng);
    const Classification via_screen = rec.classify(s);
    const Classification via_root = rec.classify_root(rec.encode(s));
    CHECK(via_screen.label == via_root.label);
    CHECK(via_screen.probs == via_root.probs);
  }
}

TEST_CASE("probabilities always sum to one") {
  const Recognizer rec = make_recognizer();
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const Classification c = rec.classify(random_screen(rng));
    double sum = 0.0;
    for (double p : c.probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("first batch loss is ln(n_states) exactly") {
  Recognizer rec = make_recognizer(9);
  AdamOptimizer opt(1e-3);
  const GridSpec grid{3, 3, {}, {0, 0}, {2, 2}};
  const double loss = rec.train_batch({render(grid, {0, 0}), render(grid, {1, 2})}, {0, 5}, opt);
  CHECK(loss == doctest::Approx(std::log(9.0)).epsilon(1e-12));
}

TEST_CASE("one screen-label pair overfits well below 1e-2") {
  Recognizer rec = make_recognizer(9);
  AdamOptimizer opt(1e-2);
  const GridSpec grid{3, 3, {}, {0, 0}, {2, 2}};
  const std::vector<Screen> batch{render(grid, {1, 1})};
  const std::vector<int> labels{4};
  double loss = 1.0;
  for (int i = 0; i < 1500 && loss >= 1e-2; ++i) loss = rec.train_batch(batch, labels, opt);
  CHECK(loss < 1e-2);
  CHECK(rec.classify(batch[0]).label == 4);
}

TEST_CASE("bad batches and roots are rejected") {
  Recognizer rec = make_recognizer();
  AdamOptimizer opt;
  CHECK_THROWS_AS(rec.train_batch({}, {}, opt), std::invalid_argument);
  const GridSpec grid{3, 3, {}, {0, 0}, {2, 2}};
  CHECK_THROWS_AS(rec.train_batch({render(grid, {0, 0})}, {17}, opt), std::invalid_argument);
  CHECK_THROWS_AS(rec.classify_root(std::vector<double>{0.1, 0.2}), std::invalid_argument);
}
