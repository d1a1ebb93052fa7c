#include <algorithm>

#include "coins/gridmap.hpp"
#include "coins/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coins;

namespace {

GridSpec spec_of(int w, int h, double res = 0.1, double ox = 0.0, double oy = 0.0) {
  return GridSpec{res, ox, oy, w, h};
}

}  // namespace

TEST_CASE("project_heights: placement, max semantics, dropped points") {
  GridSpec spec = spec_of(8, 8);
  PointCloud c;
  c.points = {{0.05, 0.05, 0.30}};
  const auto out = project_heights(c, spec);
  CHECK(out.heights.at({0, 0}) == 0.30);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      if (!(x == 0 && y == 0)) CHECK(out.heights.is_empty_cell({x, y}));

  PointCloud two;
  two.points = {{0.35, 0.35, 0.1}, {0.36, 0.33, 0.4}};
  CHECK(project_heights(two, spec).heights.at({3, 3}) == 0.4);

  PointCloud outside;
  outside.points = {{0.05, 0.05, 0.1}, {9.0, 9.0, 1.0}};
  const auto res = project_heights(outside, spec);
  CHECK(res.dropped_points == 1);

  PointCloud nothing;
  nothing.points = {{9.0, 9.0, 1.0}};
  CHECK_THROWS_AS(project_heights(nothing, spec), EmptyGrid);
}

TEST_CASE("project_heights matches the naive binning oracle") {
  Rng rng(13);
  GridSpec spec = spec_of(12, 9, 0.07, -0.3, 0.2);
  PointCloud c;
  for (int i = 0; i < 1000; ++i)
    c.points.emplace_back(rng.uniform(-0.5, 0.8), rng.uniform(0.0, 1.0), rng.uniform(-1, 1));
  const auto got = project_heights(c, spec);
  const auto want = oracle::naive_height_binning(c, spec);
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.heights.h[i] == want[i]);
}

TEST_CASE("threshold_occupancy: strict inequality and empty cells") {
  GridSpec spec = spec_of(2, 1);
  HeightMap h{spec, {0.30, kEmptyHeight}};
  // traverse over obstacles lower than 0.25 m: 0.30 blocks
  CHECK(threshold_occupancy(h, 0.25).at({0, 0}));
  CHECK_FALSE(threshold_occupancy(h, 0.25).at({1, 0}));

  HeightMap boundary{spec, {0.25, 0.25}};
  CHECK_FALSE(threshold_occupancy(boundary, 0.25).at({0, 0}));
}

TEST_CASE("inflate: trivial cases and the 13-cell disk") {
  GridSpec spec = spec_of(12, 12, 1.0);
  OccupancyMap empty = OccupancyMap::empty(spec);
  CHECK(inflate(empty, 2.0).traversable_count() == spec.cell_count());

  OccupancyMap one = OccupancyMap::empty(spec);
  one.set({5, 5}, true);
  const TraversabilityMap t = inflate(one, 2.0);
  std::size_t blocked = 0;
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) {
      const int dx = x - 5, dy = y - 5;
      const bool in_disk = dx * dx + dy * dy <= 4;
      CHECK(t.at({x, y}) == !in_disk);
      blocked += in_disk;
    }
  }
  CHECK(blocked == 13);

  const TraversabilityMap t0 = inflate(one, 0.0);
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) CHECK(t0.at({x, y}) == !one.at({x, y}));
}

TEST_CASE("inflate matches brute force and the EDT fast path") {
  Rng rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    GridSpec spec = spec_of(32 + rng.below_int(33), 32 + rng.below_int(33), 0.05);
    const OccupancyMap occ = oracle::random_occupancy(spec, 0.08, rng.next_u64());
    for (double r_cells : {0.0, 1.0, 2.5, 5.0}) {
      const double r = r_cells * spec.resolution;
      const TraversabilityMap kernel = inflate(occ, r);
      const TraversabilityMap brute = oracle::brute_force_inflate(occ, r);
      const TraversabilityMap edt = inflate_edt(occ, r);
      CHECK(kernel.trav == brute.trav);
      CHECK(kernel.trav == edt.trav);
    }
  }
}

TEST_CASE("inflation properties: monotone in occupancy, radius, and carving") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    GridSpec spec = spec_of(24, 24, 0.05);
    OccupancyMap occ = oracle::random_occupancy(spec, 0.1, rng.next_u64());
    const double r1 = rng.uniform(0.0, 0.2);
    const double r2 = r1 + rng.uniform(0.0, 0.2);

    // adding occupied cells never grows the traversable set
    OccupancyMap denser = occ;
    for (int k = 0; k < 10; ++k)
      denser.set({rng.below_int(24), rng.below_int(24)}, true);
    const TraversabilityMap base = inflate(occ, r1);
    const TraversabilityMap more = inflate(denser, r1);
    for (std::size_t i = 0; i < base.trav.size(); ++i) CHECK(more.trav[i] <= base.trav[i]);

    // larger radius never grows the traversable set
    const TraversabilityMap wider = inflate(occ, r2);
    for (std::size_t i = 0; i < base.trav.size(); ++i) CHECK(wider.trav[i] <= base.trav[i]);

    // carving never shrinks the traversable set
    std::vector<Cell> footprint;
    for (int k = 0; k < 6; ++k) footprint.push_back({rng.below_int(24), rng.below_int(24)});
    const TraversabilityMap carved = carve_object(occ, footprint, r1);
    for (std::size_t i = 0; i < base.trav.size(); ++i) CHECK(carved.trav[i] >= base.trav[i]);

    // trav is always a subset of not-occupied
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x)
        if (base.at({x, y})) CHECK_FALSE(occ.at({x, y}));
  }
}

TEST_CASE("carve_object: no-op, total clearance, reconnection") {
  GridSpec spec = spec_of(16, 16, 0.05);
  Rng rng(37);
  OccupancyMap occ = oracle::random_occupancy(spec, 0.15, 99);

  const TraversabilityMap plain = inflate(occ, 0.05);
  const TraversabilityMap noop = carve_object(occ, {}, 0.05);
  CHECK(plain.trav == noop.trav);

  std::vector<Cell> everything;
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      if (occ.at({x, y})) everything.push_back({x, y});
  const TraversabilityMap total = carve_object(occ, everything, 0.05);
  CHECK(total.traversable_count() == spec.cell_count());

  CHECK_THROWS_AS(carve_object(occ, {Cell{-1, 0}}, 0.05), OutOfBounds);

  // a wall with a one-object gap: carving reconnects the two components
  OccupancyMap wall = OccupancyMap::empty(spec);
  for (int y = 0; y < 16; ++y) wall.set({8, y}, true);
  std::vector<Cell> object;
  for (int y = 6; y <= 9; ++y) {
    wall.set({8, y}, false);   // the gap itself is wall-free
    object.push_back({8, y});  // and the object fills it
  }
  OccupancyMap gap_blocked = wall;
  for (const Cell& c : object) gap_blocked.set(c, true);
  const TraversabilityMap before = inflate(gap_blocked, 0.0);
  const TraversabilityMap after = carve_object(gap_blocked, object, 0.0);
  CHECK(oracle::count_components(before) == 2);
  CHECK(oracle::count_components(after) == 1);
  (void)rng;
}

TEST_CASE("footprint_of: mask binning") {
  GridSpec spec = spec_of(10, 10);
  PointCloud c;
  c.points = {{0.15, 0.15, 0.5}, {0.55, 0.55, 0.5}, {0.56, 0.57, 0.2}};

  CHECK(footprint_of(c, {0, 0, 0}, spec).empty());
  CHECK(footprint_of(c, {1, 0, 0}, spec) == std::vector<Cell>{{1, 1}});
  CHECK(footprint_of(c, {1, 1, 1}, spec) == std::vector<Cell>{{1, 1}, {5, 5}});
  CHECK_THROWS_AS(footprint_of(c, {1, 0}, spec), LengthMismatch);

  Rng rng(41);
  PointCloud big;
  std::vector<std::uint8_t> mask;
  for (int i = 0; i < 500; ++i) {
    big.points.emplace_back(rng.uniform(0, 1), rng.uniform(0, 1), 0.3);
    mask.push_back(rng.bernoulli(0.4) ? 1 : 0);
  }
  const auto got = footprint_of(big, mask, spec);
  std::vector<Cell> want;
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (!mask[i]) continue;
    const Cell cell = spec.cell_at(big.points[i].x(), big.points[i].y());
    if (spec.in_bounds(cell)) want.push_back(cell);
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  CHECK(got == want);
}
