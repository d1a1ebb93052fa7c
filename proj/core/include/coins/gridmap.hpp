#pragma once

#include <limits>
#include <vector>

#include "coins/geometry.hpp"
#include "coins/grid.hpp"

namespace coins {

// Marker for height cells that received no points.
inline constexpr double kEmptyHeight = -std::numeric_limits<double>::infinity();

struct HeightMap {
  GridSpec spec;
  std::vector<double> h;  // kEmptyHeight where no point landed

  double at(Cell c) const { return h[spec.index(c)]; }
  bool is_empty_cell(Cell c) const { return h[spec.index(c)] == kEmptyHeight; }
};

struct OccupancyMap {
  GridSpec spec;
  std::vector<std::uint8_t> occ;

  bool at(Cell c) const { return occ[spec.index(c)] != 0; }
  void set(Cell c, bool v) { occ[spec.index(c)] = v ? 1 : 0; }
  std::size_t occupied_count() const;

  static OccupancyMap empty(const GridSpec& spec);
};

struct TraversabilityMap {
  GridSpec spec;
  std::vector<std::uint8_t> trav;  // 1 = traversable

  bool at(Cell c) const { return trav[spec.index(c)] != 0; }
  std::size_t traversable_count() const;
};

struct HeightProjection {
  HeightMap heights;
  std::size_t dropped_points = 0;  // points outside the grid
};

// Per-cell maximum z over the points whose (x,y) land in the cell.
HeightProjection project_heights(const PointCloud& cloud, const GridSpec& spec);

// Occupied iff the cell is non-empty and strictly taller than h_max.
OccupancyMap threshold_occupancy(const HeightMap& h, double h_max);

// Disk membership shared by inflate, its fast path and the oracle tests:
// offsets (dx,dy) with (dx^2+dy^2) <= (r_clear/resolution)^2, inclusive.
std::vector<Cell> disk_offsets(double r_clear, double resolution);

// Traversable iff no occupied cell has its center within r_clear (inclusive)
// of this cell's center. r_clear = 0 reduces to the complement of occ.
TraversabilityMap inflate(const OccupancyMap& occ, double r_clear);

// Exact-distance-transform fast path; matches inflate() cell for cell.
TraversabilityMap inflate_edt(const OccupancyMap& occ, double r_clear);

// Counterfactual map with the footprint cleared, then inflated as usual.
TraversabilityMap carve_object(const OccupancyMap& occ, const std::vector<Cell>& footprint,
                               double r_clear);

// Cells containing at least one masked point; sorted, unique.
std::vector<Cell> footprint_of(const PointCloud& cloud, const std::vector<std::uint8_t>& mask,
                               const GridSpec& spec);

}  // namespace coins
