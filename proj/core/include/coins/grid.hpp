#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "coins/error.hpp"

namespace coins {

struct Cell {
  int x = 0;
  int y = 0;

  bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  bool operator<(const Cell& o) const { return y != o.y ? y < o.y : x < o.x; }
};

inline std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

// Metric layout of a 2D grid. origin is the world coordinate of the corner of
// cell (0,0); cell (x,y) spans [origin + x*res, origin + (x+1)*res) on each axis.
struct GridSpec {
  double resolution = 0.05;
  double origin_x = 0.0;
  double origin_y = 0.0;
  int width = 0;
  int height = 0;

  void validate() const {
    if (!(resolution > 0.0)) throw Error("GridSpec: resolution must be > 0");
    if (width < 1 || height < 1) throw Error("GridSpec: width and height must be >= 1");
  }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;
  }

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.x);
  }

  std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  Cell cell_at(double x, double y) const {
    return Cell{static_cast<int>(std::floor((x - origin_x) / resolution)),
                static_cast<int>(std::floor((y - origin_y) / resolution))};
  }

  bool contains_point(double x, double y) const { return in_bounds(cell_at(x, y)); }

  double center_x(Cell c) const { return origin_x + (c.x + 0.5) * resolution; }
  double center_y(Cell c) const { return origin_y + (c.y + 0.5) * resolution; }

  double diagonal_m() const {
    return std::hypot(width * resolution, height * resolution);
  }

  bool operator==(const GridSpec& o) const {
    return resolution == o.resolution && origin_x == o.origin_x &&
           origin_y == o.origin_y && width == o.width && height == o.height;
  }
};

}  // namespace coins
