#include <stdexcept>
#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "agent.hpp"
#include "grid.hpp"
#include "rng.hpp"

using namespace imagine;

namespace {

GridSpec open3() { return GridSpec{3, 3, {}, {0, 0}, {2, 2}}; }

// Independent distance oracle: Bellman-Ford relaxation over the free-cell
// graph, deliberately not the BFS used by the implementation.
std::vector<int> relaxation_distances(const GridSpec& grid) {
  const int n = grid.width * grid.height;
  std::vector<int> dist(n, kUnreachable);
  dist[grid.goal.row * grid.width + grid.goal.col] = 0;
  for (int sweep = 0; sweep < n; ++sweep) {
    bool changed = false;
    for (int r = 0; r < grid.height; ++r) {
      for (int c = 0; c < grid.width; ++c) {
        const Cell cell{r, c};
        if (!grid.is_free(cell)) continue;
        for (int a = 0; a < kNumActions; ++a) {
          const Cell nb = moved(cell, static_cast<Action>(a));
          if (!grid.is_free(nb)) continue;
          const int through = dist[nb.row * grid.width + nb.col];
          if (through == kUnreachable) continue;
          if (through + 1 < dist[r * grid.width + c]) {
            dist[r * grid.width + c] = through + 1;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

GridSpec random_valid_grid(Rng& rng) {
  while (true) {
    GridSpec grid;
    grid.width = 2 + rng.uniform_int(5);
    grid.height = 2 + rng.uniform_int(5);
    grid.start = {rng.uniform_int(grid.height), rng.uniform_int(grid.width)};
    grid.goal = {rng.uniform_int(grid.height), rng.uniform_int(grid.width)};
    const int n_walls = rng.uniform_int(grid.width * grid.height / 2 + 1);
    for (int i = 0; i < n_walls; ++i) {
      grid.walls.insert({rng.uniform_int(grid.height), rng.uniform_int(grid.width)});
    }
    try {
      grid.validate();
      return grid;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace

TEST_CASE("state labels are row-major over free cells") {
  const StateIndex open(open3());
  CHECK(open.size() == 9);
  CHECK(open.label({0, 0}) == 0);
  CHECK(open.label({2, 2}) == 8);
  CHECK(open.cell(8) == Cell{2, 2});

  const StateIndex walled(GridSpec{3, 3, {{1, 1}}, {0, 0}, {2, 2}});
  CHECK(walled.size() == 8);
  CHECK(walled.label({1, 2}) == 4);
  CHECK_THROWS_AS(walled.label({1, 1}), std::invalid_argument);

  const StateIndex tiny(GridSpec{2, 1, {}, {0, 0}, {0, 1}});
  CHECK(tiny.size() == 2);
  CHECK(tiny.label({0, 0}) == 0);
  CHECK(tiny.label({0, 1}) == 1);
}

TEST_CASE("labels and cells are a bijection") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GridSpec grid = random_valid_grid(rng);
    const StateIndex states(grid);
    for (int s = 0; s < states.size(); ++s) CHECK(states.label(states.cell(s)) == s);
  }
}

TEST_CASE("step moves, bumps and rewards") {
  const GridSpec grid = open3();
  SUBCASE("plain move") {
    const StepResult r = step(grid, {0, 0}, Action::Right);
    CHECK(r.next == Cell{0, 1});
    CHECK(r.reward == 0.0);
    CHECK_FALSE(r.done);
  }
  SUBCASE("boundary bump stays") {
    const StepResult r = step(grid, {0, 0}, Action::Up);
    CHECK(r.next == Cell{0, 0});
    CHECK(r.reward == 0.0);
    CHECK_FALSE(r.done);
  }
  SUBCASE("goal entry pays and terminates") {
    const StepResult r = step(grid, {2, 1}, Action::Right);
    CHECK(r.next == Cell{2, 2});
    CHECK(r.reward == 1.0);
    CHECK(r.done);
  }
  SUBCASE("stepping from the goal is a contract violation") {
    CHECK_THROWS_AS(step(grid, {2, 2}, Action::Up), std::invalid_argument);
  }
}

TEST_CASE("step is pure and never leaves the free cells") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const GridSpec grid = random_valid_grid(rng);
    const StateIndex states(grid);
    for (int s = 0; s < states.size(); ++s) {
      const Cell pos = states.cell(s);
      if (pos == grid.goal) continue;
      for (int a = 0; a < kNumActions; ++a) {
        const StepResult r1 = step(grid, pos, static_cast<Action>(a));
        const StepResult r2 = step(grid, pos, static_cast<Action>(a));
        CHECK(r1.next == r2.next);
        CHECK(r1.reward == r2.reward);
        CHECK(r1.done == r2.done);
        CHECK(grid.is_free(r1.next));
      }
    }
  }
}

TEST_CASE("render encodes agent, walls and goal") {
  SUBCASE("2x2 encoding table") {
    const GridSpec grid{2, 2, {}, {0, 0}, {1, 1}};
    const Screen s = render(grid, {0, 0});
    CHECK(s.pixels == std::vector<double>{1.0, 0.0, 0.0, 0.5});
  }
  SUBCASE("wall pixel unchanged next to the agent") {
    const GridSpec grid{3, 3, {{1, 1}}, {0, 0}, {2, 2}};
    const Screen s = render(grid, {0, 1});
    CHECK(s.at(1, 1) == kWallPixel);
    CHECK(s.at(0, 1) == kAgentPixel);
  }
  SUBCASE("agent overrides the goal pixel") {
    const GridSpec grid = open3();
    const Screen s = render(grid, {2, 2});
    CHECK(s.at(2, 2) == kAgentPixel);
  }
}

TEST_CASE("render is injective over free cells") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const GridSpec grid = random_valid_grid(rng);
    const StateIndex states(grid);
    for (int a = 0; a < states.size(); ++a) {
      for (int b = a + 1; b < states.size(); ++b) {
        CHECK(render(grid, states.cell(a)) != render(grid, states.cell(b)));
      }
    }
  }
}

TEST_CASE("bfs distances: open grid, goal, and the walled 5x5") {
  CHECK(bfs_distance(open3(), {0, 0}) == 4);
  CHECK(bfs_distance(open3(), {2, 2}) == 0);

  // Frozen expectations for the walled grid, cross-checked by hand and by
  // the relaxation oracle below.
  const GridSpec maze = GridSpec::maze5();
  const std::vector<int> expected = {
      8, 7, 6, 5, 4,
      7, -1, -1, -1, 3,
      6, 5, 4, 3, 2,
      5, -1, -1, -1, 1,
      4, 3, 2, 1, 0,
  };
  const std::vector<int> got = bfs_distances(maze);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      if (expected[r * 5 + c] < 0) continue;  // wall
      CHECK(got[r * 5 + c] == expected[r * 5 + c]);
    }
  }
}

TEST_CASE("bfs agrees with the independent relaxation oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const GridSpec grid = random_valid_grid(rng);
    const std::vector<int> fast = bfs_distances(grid);
    const std::vector<int> slow = relaxation_distances(grid);
    for (int r = 0; r < grid.height; ++r) {
      for (int c = 0; c < grid.width; ++c) {
        if (!grid.is_free({r, c})) continue;
        CHECK(fast[r * grid.width + c] == slow[r * grid.width + c]);
      }
    }
  }
}

TEST_CASE("value iteration: terminal entry, discounted optimum, bounds") {
  const GridSpec grid = open3();
  const StateIndex states(grid);
  const ActionValues q = value_iteration(grid, 0.9, 1e-9);

  // Entering the goal from the adjacent cell is worth exactly 1.
  CHECK(q[states.label({2, 1})][static_cast<int>(Action::Right)] == doctest::Approx(1.0).epsilon(1e-9));
  // A cell at BFS distance 2: optimal value gamma^(d-1).
  CHECK(q[states.label({2, 0})][static_cast<int>(Action::Right)] == doctest::Approx(0.9).epsilon(1e-9));

  for (const auto& row : q) {
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("value-iteration greedy paths match BFS distances") {
  Rng rng(53);
  std::vector<GridSpec> grids = {GridSpec::open5(), GridSpec::maze5()};
  for (int trial = 0; trial < 10; ++trial) grids.push_back(random_valid_grid(rng));
  for (const GridSpec& grid : grids) {
    const StateIndex states(grid);
    const QTable table(value_iteration(grid, 0.9, 1e-9));
    const std::vector<int> dist = bfs_distances(grid);
    for (int s = 0; s < states.size(); ++s) {
      Cell pos = states.cell(s);
      if (pos == grid.goal) continue;
      const int expected = dist[pos.row * grid.width + pos.col];
      if (expected == kUnreachable) continue;
      int taken = 0;
      while (pos != grid.goal && taken <= expected) {
        pos = step(grid, pos, table.greedy_action(states.label(pos))).next;
        ++taken;
      }
      CHECK(pos == grid.goal);
      CHECK(taken == expected);
    }
  }
}

TEST_CASE("grid validation rejects broken specs") {
  CHECK_THROWS_AS((GridSpec{0, 3, {}, {0, 0}, {0, 1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 3, {{0, 0}}, {0, 0}, {2, 2}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 3, {}, {1, 1}, {1, 1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 3, {}, {0, 0}, {3, 3}}.validate()), std::invalid_argument);
  CHECK_NOTHROW(GridSpec::open5().validate());
  CHECK_NOTHROW(GridSpec::maze5().validate());
}
