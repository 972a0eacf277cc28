#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace imagine {

const char* action_name(Action a) {
  switch (a) {
    case Action::Up: return "Up";
    case Action::Down: return "Down";
    case Action::Left: return "Left";
    case Action::Right: return "Right";
  }
  return "?";
}

Cell moved(Cell pos, Action a) {
  switch (a) {
    case Action::Up: return {pos.row - 1, pos.col};
    case Action::Down: return {pos.row + 1, pos.col};
    case Action::Left: return {pos.row, pos.col - 1};
    case Action::Right: return {pos.row, pos.col + 1};
  }
  return pos;
}

void GridSpec::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be positive");
  for (const Cell& w : walls) {
    if (!in_bounds(w)) throw std::invalid_argument("wall out of bounds");
  }
  if (!in_bounds(start)) throw std::invalid_argument("start out of bounds");
  if (!in_bounds(goal)) throw std::invalid_argument("goal out of bounds");
  if (is_wall(start)) throw std::invalid_argument("start is a wall");
  if (is_wall(goal)) throw std::invalid_argument("goal is a wall");
  if (start == goal) throw std::invalid_argument("start equals goal");
  const int free_cells = width * height - static_cast<int>(walls.size());
  if (free_cells < 2) throw std::invalid_argument("grid needs at least two free cells");
}

GridSpec GridSpec::open5() { return GridSpec{5, 5, {}, {0, 0}, {4, 4}}; }

GridSpec GridSpec::maze5() {
  return GridSpec{5, 5, {{1, 1}, {1, 2}, {1, 3}, {3, 1}, {3, 2}, {3, 3}}, {0, 0}, {4, 4}};
}

StateIndex::StateIndex(const GridSpec& grid) : width_(grid.width), height_(grid.height) {
  label_by_flat_.assign(static_cast<std::size_t>(width_) * height_, -1);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      const Cell cell{r, c};
      if (grid.is_wall(cell)) continue;
      label_by_flat_[flat(cell)] = static_cast<int>(cells_.size());
      cells_.push_back(cell);
    }
  }
}

Cell StateIndex::cell(int label) const {
  if (label < 0 || label >= size()) throw std::out_of_range("state label out of range");
  return cells_[label];
}

int StateIndex::label(Cell c) const {
  if (c.row < 0 || c.row >= height_ || c.col < 0 || c.col >= width_)
    throw std::invalid_argument("cell out of bounds");
  const int l = label_by_flat_[flat(c)];
  if (l < 0) throw std::invalid_argument("cell is a wall, not a state");
  return l;
}

StepResult step(const GridSpec& grid, Cell pos, Action action) {
  if (!grid.is_free(pos)) throw std::invalid_argument("step from a non-free cell");
  if (pos == grid.goal) throw std::invalid_argument("step from the goal: episode is over");
  Cell next = moved(pos, action);
  if (!grid.is_free(next)) next = pos;  // bump: stay in place
  const bool done = next == grid.goal;
  return {next, done ? 1.0 : 0.0, done};
}

Screen render(const GridSpec& grid, Cell pos) {
  if (!grid.is_free(pos)) throw std::invalid_argument("render at a non-free cell");
  Screen s{grid.height, grid.width, std::vector<double>(static_cast<std::size_t>(grid.width) * grid.height, kEmptyPixel)};
  for (const Cell& w : grid.walls) s.pixels[static_cast<std::size_t>(w.row) * grid.width + w.col] = kWallPixel;
  s.pixels[static_cast<std::size_t>(grid.goal.row) * grid.width + grid.goal.col] = kGoalPixel;
  s.pixels[static_cast<std::size_t>(pos.row) * grid.width + pos.col] = kAgentPixel;  // agent overrides goal
  return s;
}

std::vector<int> bfs_distances(const GridSpec& grid) {
  std::vector<int> dist(static_cast<std::size_t>(grid.width) * grid.height, kUnreachable);
  const auto flat = [&](Cell c) { return static_cast<std::size_t>(c.row) * grid.width + c.col; };
  std::deque<Cell> frontier;
  dist[flat(grid.goal)] = 0;
  frontier.push_back(grid.goal);
  while (!frontier.empty()) {
    const Cell cur = frontier.front();
    frontier.pop_front();
    const int d = dist[flat(cur)];
    for (int a = 0; a < kNumActions; ++a) {
      const Cell nb = moved(cur, static_cast<Action>(a));
      if (!grid.is_free(nb)) continue;
      if (dist[flat(nb)] != kUnreachable) continue;
      dist[flat(nb)] = d + 1;
      frontier.push_back(nb);
    }
  }
  return dist;
}

int bfs_distance(const GridSpec& grid, Cell from) {
  if (!grid.in_bounds(from)) throw std::invalid_argument("cell out of bounds");
  return bfs_distances(grid)[static_cast<std::size_t>(from.row) * grid.width + from.col];
}

ActionValues value_iteration(const GridSpec& grid, double gamma, double tol) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  grid.validate();
  const StateIndex states(grid);
  const int n = states.size();
  ActionValues q(n, {0.0, 0.0, 0.0, 0.0});
  ActionValues next_q = q;
  double residual = tol;
  while (residual >= tol) {
    residual = 0.0;
    for (int s = 0; s < n; ++s) {
      const Cell pos = states.cell(s);
      if (pos == grid.goal) continue;  // absorbing, row stays zero
      for (int a = 0; a < kNumActions; ++a) {
        const StepResult r = step(grid, pos, static_cast<Action>(a));
        double v = 0.0;
        if (!r.done) {
          const auto& row = q[states.label(r.next)];
          v = *std::max_element(row.begin(), row.end());
        }
        const double updated = r.reward + gamma * v;
        residual = std::max(residual, std::abs(updated - q[s][a]));
        next_q[s][a] = updated;
      }
    }
    q.swap(next_q);
  }
  return q;
}

}  // namespace imagine
