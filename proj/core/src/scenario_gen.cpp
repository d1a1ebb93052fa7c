#include <algorithm>
#include <cstdio>

#include "coins/episodes.hpp"
#include "coins/scenario.hpp"

namespace coins {

namespace {

std::vector<Cell> rect_cells(int x0, int y0, int w, int h) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(w) * h);
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) cells.push_back({x, y});
  return cells;
}

struct Builder {
  Scenario s;
  Rng rng;

  Builder(SceneCategory cat, int width, int height, double res, std::uint64_t seed)
      : rng(seed) {
    s.category = cat;
    s.grid.resolution = res;
    s.grid.origin_x = 0.0;
    s.grid.origin_y = 0.0;
    s.grid.width = width;
    s.grid.height = height;
    s.fixed.assign(s.grid.cell_count(), 0);
    for (int x = 0; x < width; ++x) {
      s.set_fixed({x, 0}, true);
      s.set_fixed({x, height - 1}, true);
    }
    for (int y = 0; y < height; ++y) {
      s.set_fixed({0, y}, true);
      s.set_fixed({width - 1, y}, true);
    }
  }

  void wall_v(int x, int y0, int y1) {
    for (int y = y0; y <= y1; ++y) s.set_fixed({x, y}, true);
  }

  void clear_v(int x, int y0, int y1) {
    for (int y = y0; y <= y1; ++y) s.set_fixed({x, y}, false);
  }

  ObjectInstance& add_object(const std::string& category, int x0, int y0, int w, int h,
                             double height, int resistance) {
    ObjectInstance obj;
    obj.id = category + "_" + std::to_string(s.movables.size());
    obj.category = category;
    obj.footprint = rect_cells(x0, y0, w, h);
    obj.height = height;
    obj.resistance = resistance;
    obj.position = Eigen::Vector3d(s.grid.origin_x + (x0 + 0.5 * w) * s.grid.resolution,
                                   s.grid.origin_y + (y0 + 0.5 * h) * s.grid.resolution,
                                   0.5 * height);
    obj.surface_points = synthesize_surface_points(obj.footprint, height, s.grid);
    s.movables.push_back(std::move(obj));
    return s.movables.back();
  }

  bool area_free(int x0, int y0, int w, int h, int margin) const {
    for (int y = y0 - margin; y < y0 + h + margin; ++y) {
      for (int x = x0 - margin; x < x0 + w + margin; ++x) {
        const Cell c{x, y};
        if (!s.grid.in_bounds(c)) return false;
        if (s.fixed_at(c)) return false;
        for (const auto& obj : s.movables) {
          for (const Cell& fc : obj.footprint)
            if (fc == c) return false;
        }
      }
    }
    return true;
  }

  // Scatter a non-blocking object somewhere with clearance all around it.
  bool scatter_object(const std::string& category, int w, int h, double height, int resistance,
                      int x_lo, int x_hi, int margin) {
    for (int tries = 0; tries < 100; ++tries) {
      const int x0 = x_lo + rng.below_int(std::max(1, x_hi - x_lo - w));
      const int y0 = 4 + rng.below_int(std::max(1, s.grid.height - 8 - h));
      if (!area_free(x0, y0, w, h, margin)) continue;
      add_object(category, x0, y0, w, h, height, resistance);
      return true;
    }
    return false;
  }
};

struct PairRegion {
  int start_x_lo, start_x_hi;  // inclusive cell range for start
  int goal_x_lo, goal_x_hi;
};

bool pair_solvable(const Scenario& scn, const GeneratorConfig& cfg) {
  EpisodeConfig omniscient;
  omniscient.profile = cfg.reference_profile;
  omniscient.omniscient = true;
  omniscient.seed = 1;
  if (run_episode(scn, omniscient).outcome != Outcome::success) return false;

  EpisodeConfig partial;
  partial.profile = cfg.reference_profile;
  partial.seed = 1;
  if (run_episode(scn, partial).outcome != Outcome::success) return false;
  return true;
}

// Sample pairs_per_scene verified start/goal pairs from the traversable cells
// of the full-knowledge reference map.
bool sample_pairs(Builder& b, const PairRegion& region, const GeneratorConfig& cfg) {
  WorldState probe = WorldState::init(
      [&] {
        Scenario tmp = b.s;
        tmp.name = "probe";
        tmp.start = Eigen::Vector2d(b.s.grid.center_x({1, 1}), b.s.grid.center_y({1, 1}));
        tmp.goal = tmp.start;
        return tmp;
      }(),
      [] {
        EpisodeConfig c;
        c.omniscient = true;
        return c;
      }());
  const TraversabilityMap trav =
      inflate(probe.true_occupancy(cfg.reference_profile.traversal_height),
              cfg.reference_profile.inflation_radius());

  auto cells_in = [&](int x_lo, int x_hi) {
    std::vector<Cell> out;
    for (int y = 0; y < trav.spec.height; ++y)
      for (int x = x_lo; x <= x_hi; ++x)
        if (trav.at({x, y})) out.push_back({x, y});
    return out;
  };
  const std::vector<Cell> start_cells = cells_in(region.start_x_lo, region.start_x_hi);
  const std::vector<Cell> goal_cells = cells_in(region.goal_x_lo, region.goal_x_hi);
  if (start_cells.empty() || goal_cells.empty()) return false;

  const double min_sep = 1.5;  // meters
  std::vector<StartGoal> pairs;
  for (int attempts = 0; static_cast<int>(pairs.size()) < cfg.pairs_per_scene; ++attempts) {
    if (attempts >= cfg.max_attempts) return false;
    const Cell sc = start_cells[b.rng.below(start_cells.size())];
    const Cell gc = goal_cells[b.rng.below(goal_cells.size())];
    StartGoal p;
    p.start = Eigen::Vector2d(trav.spec.center_x(sc), trav.spec.center_y(sc));
    p.goal = Eigen::Vector2d(trav.spec.center_x(gc), trav.spec.center_y(gc));
    p.heading = 0.0;
    if ((p.goal - p.start).norm() < min_sep) continue;

    Scenario candidate = b.s;
    candidate.name = b.s.name.empty() ? "candidate" : b.s.name;
    candidate.start = p.start;
    candidate.start_heading = p.heading;
    candidate.goal = p.goal;
    if (!pair_solvable(candidate, cfg)) continue;
    pairs.push_back(p);
  }

  b.s.start = pairs[0].start;
  b.s.start_heading = pairs[0].heading;
  b.s.goal = pairs[0].goal;
  b.s.extra_pairs.assign(pairs.begin() + 1, pairs.end());
  return true;
}

// A full-height dividing wall whose only gap is sealed by a pushable box.
// gap_width leaves enough slack to push the box aside and still pass.
void blocked_gap_wall(Builder& b, int wx, int gap_y, int gap_width, double box_height,
                      int resistance) {
  b.wall_v(wx, 1, b.s.grid.height - 2);
  b.clear_v(wx, gap_y, gap_y + gap_width - 1);
  const int box_w = 6;
  const int y0 = gap_y + (gap_width - box_w) / 2;
  b.add_object("box", wx - 2, y0, box_w, box_w, box_height, resistance);
}

bool build_small_room(Builder& b, int index, const GeneratorConfig& cfg) {
  const int W = b.s.grid.width;
  PairRegion region{2, W - 3, 2, W - 3};
  if (index % 2 == 1) {
    const int wx = 26 + b.rng.below_int(12);
    const int gap_y = 12 + b.rng.below_int(28);
    blocked_gap_wall(b, wx, gap_y, 20, 0.4 + 0.1 * b.rng.below_int(4), 1 + b.rng.below_int(2));
    region = {6, wx - 8, wx + 8, W - 7};
    // A low box the robot simply steps over.
    b.scatter_object("box", 4, 4, 0.15, 1, 6, wx - 8, 5);
  } else {
    b.scatter_object("box", 6, 6, 0.35 + 0.1 * b.rng.below_int(4), 1 + b.rng.below_int(2), 8,
                     W - 14, 6);
    b.scatter_object("box", 4, 4, 0.12, 1, 8, W - 12, 5);
  }
  return sample_pairs(b, region, cfg);
}

bool build_big_room(Builder& b, int index, const GeneratorConfig& cfg) {
  const int W = b.s.grid.width;
  const int H = b.s.grid.height;
  const int wx1 = 28 + b.rng.below_int(8);
  const int wx2 = 58 + b.rng.below_int(8);
  const int gy1 = 12 + b.rng.below_int(H - 40);
  const int gy2 = 12 + b.rng.below_int(H - 42);

  if (index % 2 == 0) {
    blocked_gap_wall(b, wx1, gy1, 20, 0.45 + 0.1 * b.rng.below_int(3), 1 + b.rng.below_int(3));
    b.wall_v(wx2, 1, H - 2);
    b.clear_v(wx2, gy2, gy2 + 21);
  } else {
    b.wall_v(wx1, 1, H - 2);
    b.clear_v(wx1, gy1, gy1 + 21);
    blocked_gap_wall(b, wx2, gy2, 20, 0.45 + 0.1 * b.rng.below_int(3), 1 + b.rng.below_int(3));
  }

  // Extra clutter in the outer chambers, clear of both walls.
  b.scatter_object("barrel", 4, 4, 0.5, 1, 6, wx1 - 10, 6);
  b.scatter_object("chair", 6, 6, 0.8, 2, wx2 + 10, W - 12, 6);
  b.scatter_object("box", 5, 5, 0.12, 1, wx1 + 8, wx2 - 12, 5);

  PairRegion region{4, wx1 - 8, wx2 + 8, W - 5};
  return sample_pairs(b, region, cfg);
}

bool build_room_to_room(Builder& b, int index, const GeneratorConfig& cfg) {
  const int W = b.s.grid.width;
  const double res = b.s.grid.resolution;
  const int wx = 60 + b.rng.below_int(6);
  const int gy = 14 + b.rng.below_int(22);
  const int gap = 20;

  b.wall_v(wx, 1, b.s.grid.height - 2);
  b.wall_v(wx + 1, 1, b.s.grid.height - 2);
  b.clear_v(wx, gy, gy + gap - 1);
  b.clear_v(wx + 1, gy, gy + gap - 1);

  ObjectInstance& door = b.add_object("door", wx, gy, 2, gap, 2.0, 1);
  DoorSpec spec;
  const double seam_x = (wx + 1) * res;
  if (index % 2 == 0) {
    spec.hinge_side = "left";
    spec.hinge = Eigen::Vector2d(seam_x, gy * res);
    spec.handle = Eigen::Vector2d(seam_x, (gy + gap) * res);
  } else {
    spec.hinge_side = "right";
    spec.hinge = Eigen::Vector2d(seam_x, (gy + gap) * res);
    spec.handle = Eigen::Vector2d(seam_x, gy * res);
  }
  door.door = spec;

  // Clutter well away from the doorway and the door swing region.
  b.scatter_object("box", 6, 6, 0.5, 1 + b.rng.below_int(2), 8, wx - 16, 6);
  b.scatter_object("bucket", 3, 3, 0.3, 1, wx + 26, W - 10, 6);

  PairRegion region{4, wx - 10, wx + 12, W - 5};
  return sample_pairs(b, region, cfg);
}

}  // namespace

std::vector<Scenario> generate_scenarios(SceneCategory category, int count, std::uint64_t seed,
                                         const GeneratorConfig& config) {
  if (count < 1) throw Error("generate_scenarios: count must be >= 1");
  config.reference_profile.validate();

  std::vector<Scenario> out;
  for (int i = 0; i < count; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < config.max_attempts && !done; ++attempt) {
      const std::uint64_t sub_seed =
          mix64(seed ^ fnv1a64(to_string(category)) ^ (static_cast<std::uint64_t>(i) << 20 |
                                                       static_cast<std::uint64_t>(attempt)));
      bool built = false;
      switch (category) {
        case SceneCategory::small_room: {
          Builder b(category, 64, 64, config.resolution, sub_seed);
          built = build_small_room(b, i, config);
          if (built) out.push_back(std::move(b.s));
          break;
        }
        case SceneCategory::big_room: {
          Builder b(category, 96, 96, config.resolution, sub_seed);
          built = build_big_room(b, i, config);
          if (built) out.push_back(std::move(b.s));
          break;
        }
        case SceneCategory::room_to_room: {
          Builder b(category, 128, 64, config.resolution, sub_seed);
          built = build_room_to_room(b, i, config);
          if (built) out.push_back(std::move(b.s));
          break;
        }
      }
      done = built;
    }
    if (!done)
      throw GenerationExhausted("could not build a solvable " + to_string(category) +
                                " scenario after " + std::to_string(config.max_attempts) +
                                " attempts");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", i);
    out.back().name = to_string(category) + "_" + buf;
    out.back().validate();
  }
  return out;
}

}  // namespace coins
