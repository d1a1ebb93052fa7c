#include <algorithm>
#include <cmath>

#include "coins/planner.hpp"
#include "coins/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coins;

namespace {

TraversabilityMap all_free(int w, int h, double res = 0.1) {
  TraversabilityMap m;
  m.spec = GridSpec{res, 0, 0, w, h};
  m.trav.assign(m.spec.cell_count(), 1);
  return m;
}

void block(TraversabilityMap& m, Cell c) { m.trav[m.spec.index(c)] = 0; }

}  // namespace

TEST_CASE("compare_cost orders mixed straight/diagonal counts exactly") {
  CHECK(compare_cost({0, 0}, {0, 0}) == 0);
  CHECK(compare_cost({1, 0}, {0, 1}) < 0);   // 1 < sqrt2
  CHECK(compare_cost({3, 0}, {0, 2}) > 0);   // 3 > 2*sqrt2
  CHECK(compare_cost({2, 1}, {0, 3}) < 0);   // 2 + sqrt2 < 3 sqrt2
  CHECK(compare_cost({7, 0}, {0, 5}) < 0);   // 7 < 5 sqrt2 = 7.071
  CHECK(compare_cost({10, 0}, {0, 7}) > 0);  // 10 > 7 sqrt2 = 9.899
}

TEST_CASE("astar: degenerate and diagonal cases") {
  TraversabilityMap m = all_free(10, 10);
  auto same = astar(m, {3, 3}, {3, 3});
  REQUIRE(same.has_value());
  CHECK(same->cells.size() == 1);
  CHECK(same->length_m == 0.0);

  auto diag = astar(m, {0, 0}, {9, 9});
  REQUIRE(diag.has_value());
  CHECK(diag->steps.straight == 0);
  CHECK(diag->steps.diagonal == 9);
  CHECK(diag->length_m == doctest::Approx(9.0 * std::sqrt(2.0) * 0.1).epsilon(1e-12));

  block(m, {5, 5});
  CHECK_FALSE(astar(m, {5, 5}, {0, 0}).has_value());  // untraversable start -> no path
}

TEST_CASE("astar: no corner cutting") {
  TraversabilityMap m = all_free(3, 3);
  block(m, {1, 0});
  block(m, {0, 1});
  // (0,0) is boxed in diagonally; the only diagonal exit would squeeze the corner
  CHECK_FALSE(astar(m, {0, 0}, {2, 2}).has_value());

  TraversabilityMap m2 = all_free(3, 3);
  block(m2, {1, 0});
  auto p = astar(m2, {0, 0}, {2, 0});
  REQUIRE(p.has_value());
  // must route around through row 1, not through the blocked cell
  for (const Cell& c : p->cells) CHECK(m2.at(c));
  CHECK(p->steps.straight + p->steps.diagonal >= 2);
}

TEST_CASE("astar equals Dijkstra on 500 random maps with BFS reachability") {
  Rng rng(101);
  int reachable_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    GridSpec spec{0.1, 0, 0, 20, 20};
    const OccupancyMap occ = oracle::random_occupancy(spec, 0.3, rng.next_u64());
    TraversabilityMap map;
    map.spec = spec;
    map.trav.resize(occ.occ.size());
    for (std::size_t i = 0; i < occ.occ.size(); ++i) map.trav[i] = occ.occ[i] ? 0 : 1;

    const Cell start{rng.below_int(20), rng.below_int(20)};
    const Cell goal{rng.below_int(20), rng.below_int(20)};

    const auto got = astar(map, start, goal);
    const auto want = oracle::dijkstra(map, start, goal);
    CHECK(got.has_value() == want.reachable);
    CHECK(got.has_value() == oracle::bfs_reachable(map, start, goal));
    if (got) {
      ++reachable_count;
      CHECK(got->length_m == want.length_m);  // exact: both are count-derived
      CHECK(got->steps.straight == want.straight);
      CHECK(got->steps.diagonal == want.diagonal);
      // the path itself must be valid
      for (const Cell& c : got->cells) CHECK(map.at(c));
      for (std::size_t i = 1; i < got->cells.size(); ++i) {
        const Cell a = got->cells[i - 1];
        const Cell b = got->cells[i];
        CHECK(std::abs(a.x - b.x) <= 1);
        CHECK(std::abs(a.y - b.y) <= 1);
        if (a.x != b.x && a.y != b.y) {
          CHECK(map.at({b.x, a.y}));
          CHECK(map.at({a.x, b.y}));
        }
      }
    }
  }
  CHECK(reachable_count > 50);  // the cases exercise both outcomes
}

TEST_CASE("astar is deterministic: identical paths, not just lengths") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    GridSpec spec{0.05, 0, 0, 24, 24};
    const OccupancyMap occ = oracle::random_occupancy(spec, 0.25, rng.next_u64());
    TraversabilityMap map;
    map.spec = spec;
    map.trav.resize(occ.occ.size());
    for (std::size_t i = 0; i < occ.occ.size(); ++i) map.trav[i] = occ.occ[i] ? 0 : 1;
    const Cell start{1, 1}, goal{22, 22};
    const auto a = astar(map, start, goal);
    const auto b = astar(map, start, goal);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(a->cells == b->cells);
  }
}

TEST_CASE("path_length: infinity conventions and bounds checks") {
  TraversabilityMap m = all_free(10, 10);
  CHECK(path_length(m, {2, 2}, {2, 2}).meters() == 0.0);

  for (int y = 0; y < 10; ++y) block(m, {5, y});
  CHECK(path_length(m, {0, 0}, {9, 9}).is_infinite());
  CHECK_THROWS_AS(path_length(m, {0, 0}, {10, 0}), OutOfBounds);

  // untraversable goal is Infinite, not an error
  TraversabilityMap m2 = all_free(4, 4);
  block(m2, {3, 3});
  CHECK(path_length(m2, {0, 0}, {3, 3}).is_infinite());
}

TEST_CASE("path_length monotone under map growth") {
  Rng rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    GridSpec spec{0.1, 0, 0, 16, 16};
    const OccupancyMap occ = oracle::random_occupancy(spec, 0.25, rng.next_u64());
    TraversabilityMap small;
    small.spec = spec;
    small.trav.resize(occ.occ.size());
    for (std::size_t i = 0; i < occ.occ.size(); ++i) small.trav[i] = occ.occ[i] ? 0 : 1;
    TraversabilityMap big = small;  // free a few extra cells
    for (int k = 0; k < 12; ++k)
      big.trav[spec.index({rng.below_int(16), rng.below_int(16)})] = 1;

    const Cell start{rng.below_int(16), rng.below_int(16)};
    const Cell goal{rng.below_int(16), rng.below_int(16)};
    const ExtendedLength l_small = path_length(small, start, goal);
    const ExtendedLength l_big = path_length(big, start, goal);
    CHECK(l_big <= l_small);
  }
}

TEST_CASE("supercover_line: hand-enumerated 5x5 cases") {
  auto as_set = [](std::vector<Cell> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  // from (0,0) to (4,2): boundary crossings at x=0.5 (y=0.25), y=0.5 (x=1.0),
  // x=1.5 (y=0.75), x=2.5 (y=1.25), y=1.5 (x=3.0), x=3.5 (y=1.75)
  CHECK(as_set(supercover_line({0, 0}, {4, 2})) ==
        as_set({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}, {4, 2}}));
  // the pure diagonal passes two exact corners; both side cells are included
  CHECK(as_set(supercover_line({0, 0}, {2, 2})) ==
        as_set({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}}));
  // symmetric in direction (as a set)
  CHECK(as_set(supercover_line({4, 2}, {0, 0})) == as_set(supercover_line({0, 0}, {4, 2})));
}

TEST_CASE("raycast: trivial and blocked lines") {
  TraversabilityMap m = all_free(5, 5);
  CHECK(raycast(m, {2, 2}, {2, 2}));
  CHECK(raycast(m, {0, 2}, {4, 2}));

  block(m, {2, 1});
  CHECK(raycast(m, {0, 2}, {4, 2}));       // unrelated cell
  CHECK_FALSE(raycast(m, {0, 0}, {4, 2})); // line passes through (2,1)
  CHECK_THROWS_AS(raycast(m, {0, 0}, {5, 5}), OutOfBounds);

  block(m, {2, 2});
  CHECK_FALSE(raycast(m, {0, 2}, {4, 2}));
}
