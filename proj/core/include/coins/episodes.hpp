#pragma once

#include <map>
#include <set>

#include "coins/reasoner.hpp"
#include "coins/rng.hpp"
#include "coins/scenario.hpp"

namespace coins {

struct EpisodeConfig {
  double sensor_range = 4.0;       // meters
  double success_threshold = 0.5;  // meters to goal
  int max_steps = 0;               // 0 = auto: 4 * grid diagonal / resolution
  int max_retries = 3;             // skill re-executions
  double epsilon = 0.05;           // gain threshold
  SkillProfile profile = SkillProfile::legged_manipulator();
  std::uint64_t seed = 0;
  double slip_prob = 0.0;          // a push step advances 0 cells with this probability
  int contact_samples = 5;
  int push_base_cap = 12;          // displacement budget in cells, times object resistance
  double door_open_angle_deg = 100.0;
  double door_success_angle_deg = 90.0;
  bool omniscient = false;  // full-knowledge sensing oracle (scenario generation / tests)

  int resolved_max_steps(const GridSpec& grid) const;
  void validate() const;
};

enum class Knowledge : std::uint8_t { unknown = 0, free = 1, occupied = 2 };

struct KnownMap {
  GridSpec spec;
  std::vector<Knowledge> cells;

  Knowledge at(Cell c) const { return cells[spec.index(c)]; }
  void set(Cell c, Knowledge k) { cells[spec.index(c)] = k; }
  std::uint64_t content_hash() const;
};

// Ground-truth world plus everything the robot has accumulated about it.
struct WorldState {
  Scenario scenario;                     // static truth (walls, initial layout)
  std::vector<ObjectInstance> objects;   // current object poses
  std::map<std::string, double> door_angles_deg;
  Cell robot;
  double heading = 0.0;
  Eigen::Vector2d goal{0, 0};
  KnownMap known;
  std::map<std::string, ObjectInstance> registry;  // objects as last sensed
  std::set<std::string> failed_targets;
  int steps = 0;
  double path_len = 0.0;

  static WorldState init(const Scenario& s, const EpisodeConfig& cfg);

  Eigen::Vector2d robot_xy() const;
  double dist_to_goal() const;
  // Walls plus current object footprints taller than h_max.
  OccupancyMap true_occupancy(double h_max) const;
  // Occupied where known-occupied; unknown counts as free for planning.
  OccupancyMap known_occupancy() const;
};

enum class Outcome { success, timeout, infeasible };
std::string to_string(Outcome o);

struct EpisodeLog {
  std::string scenario_name;
  Outcome outcome = Outcome::timeout;
  int steps = 0;
  double pl = 0.0;   // meters traveled
  double dtg = 0.0;  // final distance to goal
  std::vector<std::string> records;            // serialized JSON lines, stable field order
  std::vector<Eigen::Vector2d> trace;          // robot position after every move
  std::uint64_t log_hash = 0;

  bool has_event(const std::string& ev) const;
  std::string to_jsonl() const;  // records + trailer line
};

// Trailer-level data parsed back from a serialized log.
struct EpisodeSummary {
  std::string scenario_name;
  Outcome outcome = Outcome::timeout;
  int steps = 0;
  double pl = 0.0;
  double dtg = 0.0;
  std::uint64_t log_hash = 0;
};
EpisodeSummary parse_episode_trailer(std::istream& in);

struct Metrics {
  double sr = 0.0;
  double mean_pl = 0.0;
  double mean_dtg = 0.0;
  int total = 0;
  int successes = 0;
};

// Update the known map from the robot's position: every cell within sensor
// range with an unobstructed line of sight becomes known, and objects with a
// visible footprint cell are registered with their ground-truth state.
void sense(WorldState& world, const EpisodeConfig& cfg);

// Follow the path cell by cell, re-sensing before each move; halts when the
// next cell is discovered blocked or the budget runs out.
void step_navigate(WorldState& world, const std::vector<Cell>& path, int budget,
                   const EpisodeConfig& cfg, EpisodeLog& log);

enum class InteractionStatus { success, unreachable_target, max_retries_exceeded };

// Execute an interaction decision: approach the target, then push laterally
// until the ray to P_t clears (or open the door), then walk to P_t.
InteractionStatus apply_interaction(WorldState& world, const Interact& act,
                                    const EpisodeConfig& cfg, EpisodeLog& log, Rng& rng);

EpisodeLog run_episode(const Scenario& scenario, const EpisodeConfig& cfg);

// SR over all logs; PL and DTG are means over all episodes including failures.
Metrics compute_metrics(const std::vector<EpisodeLog>& logs);
Metrics compute_metrics_from_summaries(const std::vector<EpisodeSummary>& summaries);

}  // namespace coins
