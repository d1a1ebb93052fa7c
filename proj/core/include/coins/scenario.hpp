#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coins/gridmap.hpp"
#include "coins/skills.hpp"

namespace coins {

// Height assigned to static walls in ground-truth occupancy.
inline constexpr double kWallHeight = 2.0;

enum class SceneCategory { small_room, big_room, room_to_room };

std::string to_string(SceneCategory c);
SceneCategory scene_category_from_string(const std::string& s);

struct StartGoal {
  Eigen::Vector2d start{0, 0};
  double heading = 0.0;
  Eigen::Vector2d goal{0, 0};
};

// A benchmark scene: static walls, movable objects, one canonical start/goal
// pair plus extra pairs for the episode harness.
struct Scenario {
  std::string name;
  SceneCategory category = SceneCategory::small_room;
  GridSpec grid;
  std::vector<std::uint8_t> fixed;  // per-cell static obstacle flag
  std::vector<ObjectInstance> movables;
  Eigen::Vector2d start{0, 0};
  double start_heading = 0.0;
  Eigen::Vector2d goal{0, 0};
  std::vector<StartGoal> extra_pairs;

  bool fixed_at(Cell c) const { return fixed[grid.index(c)] != 0; }
  void set_fixed(Cell c, bool v) { fixed[grid.index(c)] = v ? 1 : 0; }

  // Canonical pair first, then the extras.
  std::vector<StartGoal> all_pairs() const;
  // Copy with the i-th pair promoted to the active start/goal.
  Scenario with_pair(std::size_t i) const;

  // Ground-truth occupancy of the initial layout for a traversal height.
  OccupancyMap initial_occupancy(double h_max) const;

  void validate() const;
};

// Text format "coins-scenario v1"; grammar in docs/scenario_format.md.
Scenario parse_scenario(std::istream& in, const std::string& origin);
Scenario load_scenario(const std::string& path);
std::string write_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

// Deterministic perimeter-side surface points for objects loaded without an
// explicit surface cloud (contact-point sampling needs them).
PointCloud synthesize_surface_points(const std::vector<Cell>& footprint, double height,
                                     const GridSpec& grid);

struct GeneratorConfig {
  int pairs_per_scene = 10;  // canonical pair + 9 extras
  double resolution = 0.05;
  SkillProfile reference_profile = SkillProfile::legged_manipulator();
  int max_attempts = 1000;  // per rejection-sampled item
};

// Seeded, solvable-by-construction scenarios. Every emitted start/goal pair is
// verified by running the full episode loop with an omniscient sensing oracle
// and with the default partial-sensing config (slip 0) before emission.
std::vector<Scenario> generate_scenarios(SceneCategory category, int count, std::uint64_t seed,
                                         const GeneratorConfig& config = {});

}  // namespace coins
