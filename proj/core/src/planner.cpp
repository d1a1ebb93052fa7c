#include "coins/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

namespace coins {

int compare_cost(const StepCount& a, const StepCount& b) {
  const std::int64_t ds = a.straight - b.straight;
  const std::int64_t dd = a.diagonal - b.diagonal;
  if (ds == 0 && dd == 0) return 0;
  if (ds >= 0 && dd >= 0) return 1;
  if (ds <= 0 && dd <= 0) return -1;
  // Mixed signs: sign of ds + dd*sqrt(2) from ds^2 vs 2*dd^2.
  const std::int64_t lhs = ds * ds;
  const std::int64_t rhs = 2 * dd * dd;
  if (ds > 0) return lhs > rhs ? 1 : -1;  // lhs == rhs impossible for nonzero ints
  return lhs < rhs ? 1 : -1;
}

double cost_meters(const StepCount& c, double resolution) {
  return (static_cast<double>(c.straight) + std::sqrt(2.0) * c.diagonal) * resolution;
}

double ExtendedLength::meters() const {
  if (infinite_) throw Error("ExtendedLength: meters() on an infinite length");
  return meters_;
}

bool ExtendedLength::operator<(const ExtendedLength& o) const {
  if (infinite_) return false;
  if (o.infinite_) return true;
  return meters_ < o.meters_;
}

bool ExtendedLength::operator<=(const ExtendedLength& o) const {
  return !(o < *this);
}

namespace {

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

StepCount octile(Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return {std::max(dx, dy) - std::min(dx, dy), std::min(dx, dy)};
}

StepCount add(const StepCount& a, const StepCount& b) {
  return {a.straight + b.straight, a.diagonal + b.diagonal};
}

struct OpenEntry {
  StepCount f;
  StepCount g;
  std::size_t index;
};

// priority_queue is a max-heap; this orders the "largest" entry as the one we
// want to pop last, i.e. pop order is ascending (f, g, index).
struct OpenGreater {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    const int cf = compare_cost(a.f, b.f);
    if (cf != 0) return cf > 0;
    const int cg = compare_cost(a.g, b.g);
    if (cg != 0) return cg > 0;
    return a.index > b.index;
  }
};

}  // namespace

std::optional<GridPath> astar(const TraversabilityMap& map, Cell start, Cell goal) {
  const GridSpec& spec = map.spec;
  if (!spec.in_bounds(start) || !spec.in_bounds(goal)) return std::nullopt;
  if (!map.at(start) || !map.at(goal)) return std::nullopt;

  if (start == goal) {
    GridPath p;
    p.cells = {start};
    p.length_m = 0.0;
    return p;
  }

  const std::size_t n = spec.cell_count();
  std::vector<StepCount> g(n);
  std::vector<std::uint8_t> has_g(n, 0), closed(n, 0);
  std::vector<std::int32_t> parent(n, -1);

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenGreater> open;
  const std::size_t si = spec.index(start);
  g[si] = StepCount{};
  has_g[si] = 1;
  open.push({octile(start, goal), StepCount{}, si});

  const std::size_t goal_index = spec.index(goal);
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    if (closed[top.index]) continue;
    if (!(g[top.index] == top.g)) continue;  // stale entry
    closed[top.index] = 1;
    if (top.index == goal_index) break;

    const Cell cur{static_cast<int>(top.index % spec.width),
                   static_cast<int>(top.index / spec.width)};
    for (int k = 0; k < 8; ++k) {
      const Cell next{cur.x + kDx[k], cur.y + kDy[k]};
      if (!spec.in_bounds(next) || !map.at(next)) continue;
      const bool diag = kDx[k] != 0 && kDy[k] != 0;
      if (diag) {
        // No corner cutting: both orthogonal neighbors must be free.
        if (!map.at({cur.x + kDx[k], cur.y}) || !map.at({cur.x, cur.y + kDy[k]})) continue;
      }
      const StepCount ng = add(top.g, diag ? StepCount{0, 1} : StepCount{1, 0});
      const std::size_t ni = spec.index(next);
      if (closed[ni]) continue;
      if (!has_g[ni] || compare_cost(ng, g[ni]) < 0) {
        g[ni] = ng;
        has_g[ni] = 1;
        parent[ni] = static_cast<std::int32_t>(top.index);
        open.push({add(ng, octile(next, goal)), ng, ni});
      }
    }
  }

  if (!closed[goal_index]) return std::nullopt;

  GridPath path;
  path.steps = g[goal_index];
  path.length_m = cost_meters(path.steps, spec.resolution);
  std::size_t at = goal_index;
  while (true) {
    path.cells.push_back({static_cast<int>(at % spec.width), static_cast<int>(at / spec.width)});
    if (parent[at] < 0) break;
    at = static_cast<std::size_t>(parent[at]);
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

ExtendedLength path_length(const TraversabilityMap& map, Cell start, Cell goal) {
  if (!map.spec.in_bounds(start)) throw OutOfBounds("start " + to_string(start));
  if (!map.spec.in_bounds(goal)) throw OutOfBounds("goal " + to_string(goal));
  auto path = astar(map, start, goal);
  if (!path) return ExtendedLength::infinite();
  return ExtendedLength::finite(path->length_m);
}

std::vector<Cell> supercover_line(Cell a, Cell b) {
  std::vector<Cell> cells;
  cells.push_back(a);
  const int dx = b.x - a.x;
  const int dy = b.y - a.y;
  const int nx = std::abs(dx);
  const int ny = std::abs(dy);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;

  Cell c = a;
  int ix = 0, iy = 0;
  while (ix < nx || iy < ny) {
    const std::int64_t decide =
        static_cast<std::int64_t>(1 + 2 * ix) * ny - static_cast<std::int64_t>(1 + 2 * iy) * nx;
    if (decide == 0) {
      // Exact corner crossing: include both side cells.
      cells.push_back({c.x + sx, c.y});
      cells.push_back({c.x, c.y + sy});
      c.x += sx;
      c.y += sy;
      ++ix;
      ++iy;
    } else if (decide < 0) {
      c.x += sx;
      ++ix;
    } else {
      c.y += sy;
      ++iy;
    }
    cells.push_back(c);
  }
  return cells;
}

bool raycast(const TraversabilityMap& map, Cell a, Cell b) {
  if (!map.spec.in_bounds(a)) throw OutOfBounds("raycast a " + to_string(a));
  if (!map.spec.in_bounds(b)) throw OutOfBounds("raycast b " + to_string(b));
  for (const Cell& c : supercover_line(a, b)) {
    if (!map.at(c)) return false;
  }
  return true;
}

}  // namespace coins
