#include <stdexcept>
#include <cmath>

#include "doctest.h"

#include "memory.hpp"

using namespace imagine;

namespace {

Transition make_transition(int state, double tag = 0.0) {
  Transition t;
  t.state = state;
  t.screen = Screen{1, 2, {tag, 0.0}};
  t.action = Action::Right;
  t.next_state = state;
  t.next_screen = Screen{1, 2, {0.0, tag}};
  t.next_action = Action::Left;
  return t;
}

}  // namespace

TEST_CASE("short-term queues are per-state FIFOs") {
  ShortTermMemory stm(4, 3);
  SUBCASE("single store lands in one queue") {
    stm.store(make_transition(2));
    CHECK(stm.size(2) == 1);
    CHECK(stm.size(0) == 0);
    CHECK(stm.total_size() == 1);
  }
  SUBCASE("overflow evicts the oldest") {
    for (int i = 0; i < 4; ++i) stm.store(make_transition(1, static_cast<double>(i)));
    CHECK(stm.size(1) == 3);
    CHECK(stm.queue(1).front().screen.pixels[0] == 1.0);
    CHECK(stm.queue(1).back().screen.pixels[0] == 3.0);
  }
  SUBCASE("stored transitions come back bit-identical") {
    const Transition t = make_transition(3, 0.625);
    stm.store(t);
    const Transition& back = stm.queue(3).front();
    CHECK(back.screen == t.screen);
    CHECK(back.next_screen == t.next_screen);
    CHECK(back.next_action == t.next_action);
    CHECK(back.state == t.state);
  }
  SUBCASE("unknown labels rejected") {
    CHECK_THROWS_AS(stm.store(make_transition(7)), std::out_of_range);
  }
}

TEST_CASE("balanced sampling is uniform over nonempty queues") {
  ShortTermMemory stm(5, 64);
  SUBCASE("a single nonempty queue supplies everything") {
    stm.store(make_transition(2));
    Rng rng(5);
    for (const Transition& t : stm.sample_balanced(50, rng)) CHECK(t.state == 2);
  }
  SUBCASE("two queues split 0.5 within 0.03 over 10k draws") {
    for (int i = 0; i < 40; ++i) stm.store(make_transition(1));
    stm.store(make_transition(3));  // size imbalance must not skew the marginal
    Rng rng(6);
    int from_one = 0;
    const auto batch = stm.sample_balanced(10000, rng);
    for (const Transition& t : batch) from_one += t.state == 1 ? 1 : 0;
    const double freq = from_one / 10000.0;
    CHECK(freq > 0.47);
    CHECK(freq < 0.53);
  }
  SUBCASE("chi-square sanity over five queues") {
    for (int s = 0; s < 5; ++s) {
      for (int i = 0; i <= s; ++i) stm.store(make_transition(s));
    }
    Rng rng(7);
    std::array<int, 5> counts{};
    for (const Transition& t : stm.sample_balanced(10000, rng)) ++counts[t.state];
    double chi2 = 0.0;
    for (int c : counts) {
      const double d = c - 2000.0;
      chi2 += d * d / 2000.0;
    }
    CHECK(chi2 < 18.47);  // 99.9th percentile, 4 degrees of freedom
  }
  SUBCASE("degenerate batches rejected") {
    Rng rng(8);
    CHECK_THROWS_AS(stm.sample_balanced(0, rng), std::invalid_argument);
    CHECK_THROWS_AS(stm.sample_balanced(4, rng), std::invalid_argument);  // all empty
  }
}

TEST_CASE("long-term distributions follow the batch statistics") {
  SUBCASE("first fit adopts the batch mean exactly") {
    LongTermMemory ltm(3, 2);
    ltm.fit(1, {{0.5, -0.5}, {0.1, 0.3}});
    CHECK(ltm.mean(1) == RootVector{0.3, -0.1});
    CHECK(ltm.update_count(1) == 1);
    CHECK_FALSE(ltm.fitted(0));
  }
  SUBCASE("repeated identical batches converge to the value and floor the variance") {
    LongTermMemory ltm(2, 2);
    ltm.fit(0, {{-0.9, 0.9}});  // start somewhere else
    const RootVector v{0.25, -0.75};
    for (int i = 0; i < 500; ++i) ltm.fit(0, {v, v});
    CHECK(std::abs(ltm.mean(0)[0] - v[0]) < 1e-6);
    CHECK(std::abs(ltm.mean(0)[1] - v[1]) < 1e-6);
    CHECK(ltm.variance(0)[0] == 1e-4);
    CHECK(ltm.variance(0)[1] == 1e-4);
  }
  SUBCASE("variance never drops below the floor") {
    LongTermMemory ltm(1, 3);
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
      std::vector<RootVector> roots(1 + rng.uniform_int(4), RootVector(3));
      for (auto& r : roots) {
        for (double& x : r) x = rng.uniform(-1.0, 1.0) * (i % 7 == 0 ? 0.0 : 1.0);
      }
      ltm.fit(0, roots);
      for (double v : ltm.variance(0)) CHECK(v >= 1e-4);
    }
  }
  SUBCASE("dimension and state errors") {
    LongTermMemory ltm(2, 3);
    CHECK_THROWS_AS(ltm.fit(0, {{0.1, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(ltm.fit(5, {{0.1, 0.2, 0.3}}), std::out_of_range);
    CHECK_THROWS_AS(ltm.fit(0, {}), std::invalid_argument);
  }
}

TEST_CASE("generation from long-term memory") {
  LongTermMemory ltm(2, 3);
  ltm.fit(1, {{0.2, -0.3, 0.4}, {0.4, -0.1, 0.0}});
  SUBCASE("temperature zero returns the mean exactly") {
    Rng rng(10);
    CHECK(ltm.generate(1, 0.0, rng) == ltm.mean(1));
  }
  SUBCASE("seeded draws reproduce") {
    Rng a(11);
    Rng b(11);
    CHECK(ltm.generate(1, 1.0, a) == ltm.generate(1, 1.0, b));
  }
  SUBCASE("never-fitted states cannot generate") {
    Rng rng(12);
    CHECK_THROWS_AS(ltm.generate(0, 0.0, rng), std::invalid_argument);
  }
}

TEST_CASE("decoder output and training") {
  Rng rng(13);
  Decoder dec(4, 8, 2, 3, rng);
  SUBCASE("untrained decoder emits exactly 0.5 everywhere") {
    const Screen s = dec.decode(std::vector<double>{0.1, -0.2, 0.3, 0.0});
    CHECK(s.height == 2);
    CHECK(s.width == 3);
    for (double p : s.pixels) CHECK(p == 0.5);
  }
  SUBCASE("decode is pure") {
    const std::vector<double> root{0.5, 0.5, -0.5, 0.25};
    CHECK(dec.decode(root) == dec.decode(root));
  }
  SUBCASE("a single pair overfits below 1e-4") {
    AdamOptimizer opt(1e-2);
    const std::vector<RootVector> roots{{0.3, -0.6, 0.9, 0.1}};
    const std::vector<Screen> targets{Screen{2, 3, {0.0, 0.25, 0.5, 1.0, 0.0, 0.25}}};
    double loss = 1.0;
    for (int i = 0; i < 3000 && loss >= 1e-4; ++i) loss = dec.train_batch(roots, targets, opt);
    CHECK(loss < 1e-4);
  }
  SUBCASE("empty batches rejected") {
    AdamOptimizer opt;
    CHECK_THROWS_AS(dec.train_batch({}, {}, opt), std::invalid_argument);
  }
}
