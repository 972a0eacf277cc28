#pragma once

#include <array>
#include <compare>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace imagine {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr int kNumActions = 4;

const char* action_name(Action a);
Cell moved(Cell pos, Action a);

// Screen intensity encoding.
inline constexpr double kEmptyPixel = 0.0;
inline constexpr double kWallPixel = 0.25;
inline constexpr double kGoalPixel = 0.5;
inline constexpr double kAgentPixel = 1.0;

/// Rendered intensity image of a grid state; row-major pixels in [0, 1].
struct Screen {
  int height = 0;
  int width = 0;
  std::vector<double> pixels;

  double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
  bool operator==(const Screen&) const = default;
};

/// Deterministic discrete gridworld: walls block, borders bump, the goal
/// cell is absorbing and pays reward 1 on entry.
struct GridSpec {
  int width = 5;
  int height = 5;
  std::set<Cell> walls;
  Cell start{0, 0};
  Cell goal{4, 4};

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  bool is_wall(Cell c) const { return walls.contains(c); }
  bool is_free(Cell c) const { return in_bounds(c) && !is_wall(c); }

  /// Throws std::invalid_argument when the spec is unusable.
  void validate() const;

  static GridSpec open5();
  static GridSpec maze5();
};

/// Row-major labeling of free cells: label 0 is the first free cell scanning
/// rows top to bottom, columns left to right.
class StateIndex {
 public:
  explicit StateIndex(const GridSpec& grid);

  int size() const { return static_cast<int>(cells_.size()); }
  Cell cell(int label) const;
  int label(Cell c) const;
  int flat(Cell c) const { return c.row * width_ + c.col; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Cell> cells_;
  std::vector<int> label_by_flat_;
};

struct StepResult {
  Cell next;
  double reward = 0.0;
  bool done = false;
};

/// One environment transition. Blocked moves stay in place; entering the
/// goal pays 1.0 and ends the episode. Stepping from the goal is an error.
StepResult step(const GridSpec& grid, Cell pos, Action action);

/// Renders the screen for an agent at `pos`; the agent pixel overrides the
/// goal pixel when they coincide.
Screen render(const GridSpec& grid, Cell pos);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Exact step counts to the goal for every cell (row-major flat indexing);
/// walls and cut-off cells are kUnreachable.
std::vector<int> bfs_distances(const GridSpec& grid);
int bfs_distance(const GridSpec& grid, Cell from);

using ActionValues = std::vector<std::array<double, kNumActions>>;

/// Dynamic-programming oracle: optimal action values per state label under
/// the grid's reward scheme, iterated until the max residual drops below
/// `tol`. The goal row stays zero (absorbing).
ActionValues value_iteration(const GridSpec& grid, double gamma, double tol);

/// The experience record collected from the environment.
struct Transition {
  int state = 0;
  Screen screen;
  Action action = Action::Up;
  double reward = 0.0;
  int next_state = 0;
  Screen next_screen;
  std::optional<Action> next_action;  // none exactly when done
  bool done = false;
};

}  // namespace imagine
