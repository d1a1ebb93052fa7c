#pragma once

#include <optional>
#include <vector>

#include "coins/gridmap.hpp"

namespace coins {

// Octile step cost kept as exact integer counts: total = straight + diagonal*sqrt(2).
// Comparing counts instead of accumulated doubles keeps tie-breaking and
// optimality exact; sqrt(2) is irrational, so equal costs imply equal counts.
struct StepCount {
  int straight = 0;
  int diagonal = 0;

  bool operator==(const StepCount& o) const {
    return straight == o.straight && diagonal == o.diagonal;
  }
};

// -1, 0, +1 as (a.straight - b.straight) + (a.diagonal - b.diagonal)*sqrt(2)
// compares to zero; exact integer arithmetic.
int compare_cost(const StepCount& a, const StepCount& b);

double cost_meters(const StepCount& c, double resolution);

struct GridPath {
  std::vector<Cell> cells;  // start..goal inclusive
  StepCount steps;
  double length_m = 0.0;
};

// Path length with the unreachable-as-infinity convention.
class ExtendedLength {
 public:
  static ExtendedLength finite(double meters) { return ExtendedLength(false, meters); }
  static ExtendedLength infinite() { return ExtendedLength(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  double meters() const;  // throws on infinite

  // Finite(x) < Finite(y) iff x < y; Finite(x) < Infinite; Infinite == Infinite.
  bool operator<(const ExtendedLength& o) const;
  bool operator<=(const ExtendedLength& o) const;

 private:
  ExtendedLength(bool inf, double m) : infinite_(inf), meters_(m) {}
  bool infinite_;
  double meters_;
};

// 8-connected A* with the octile heuristic. Diagonal moves may not cut
// corners: both orthogonal neighbors of a diagonal step must be traversable.
// Ties are broken by (g-cost, cell index) so replays are bit-stable.
// Untraversable endpoints yield no path rather than an error.
std::optional<GridPath> astar(const TraversabilityMap& map, Cell start, Cell goal);

// Finite(astar length) when reachable, Infinite otherwise.
ExtendedLength path_length(const TraversabilityMap& map, Cell start, Cell goal);

// Every cell the segment between the two cell centers passes through,
// including both cells at exact corner crossings.
std::vector<Cell> supercover_line(Cell a, Cell b);

// True iff every supercover cell between a and b is traversable.
bool raycast(const TraversabilityMap& map, Cell a, Cell b);

}  // namespace coins
