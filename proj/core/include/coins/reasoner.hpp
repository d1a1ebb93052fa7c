#pragma once

#include <string>
#include <variant>
#include <vector>

#include "coins/planner.hpp"
#include "coins/skills.hpp"

namespace coins {

struct GainEntry {
  std::string id;
  std::string category;
  double gain = 0.0;
  bool manipulable = false;
  ExtendedLength base_length = ExtendedLength::infinite();
  ExtendedLength cf_length = ExtendedLength::infinite();
};

// Gains for every detected object, ordered by id. Non-manipulable entries are
// kept for diagnostics but never selected.
struct GainTable {
  std::vector<GainEntry> entries;

  const GainEntry* find(const std::string& id) const;
  std::string to_jsonl() const;  // one record per line
};

struct ExecutionParams {
  // P_t; absent when no collision-free point exists on the ray past the
  // object (the executor then reports the interaction as failed).
  std::optional<Cell> target_cell;
  std::optional<Eigen::Vector2d> target_world;  // center of P_t
  std::vector<Eigen::Vector3d> contact_points;  // sampled from the surface cloud
  std::optional<DoorSpec> door_keypoints;
};

struct Navigate {
  GridPath path;
};

struct Interact {
  std::string skill;
  std::string target_id;
  double gain = 0.0;
  ExecutionParams params;
};

struct Infeasible {
  std::string reason;
};

using Decision = std::variant<Navigate, Interact, Infeasible>;

std::string decision_kind(const Decision& d);  // "navigate" | "interact" | "infeasible"

struct Reasoning {
  Decision decision;
  GainTable gains;
  ExtendedLength base_length = ExtendedLength::infinite();
};

// 3D point of the pixel (u,v) via provenance; exact hit preferred, otherwise
// the nearest provenance within fallback_radius_px (ties to the lowest index).
Eigen::Vector3d locate_object(const PointCloud& cloud, PixelRef center,
                              double fallback_radius_px = 5.0);

// Category gate plus geometric reach: some traversable cell center lies
// within workspace_radius of the object's ground-plane position.
bool check_manipulable(const ObjectInstance& obj, const TraversabilityMap& map,
                       const SkillProfile& profile);

// Relative path-length reduction from removing the footprint, Eq-style ratio
// with the unreachable conventions: both infinite -> 0; infinite made finite
// -> 1; start == goal -> 0.
double counterfactual_gain(const OccupancyMap& occ, const std::vector<Cell>& footprint,
                           Cell start, Cell goal, const SkillProfile& profile);

struct ReasonOptions {
  int contact_samples = 5;
  std::uint64_t seed = 0;
  double ray_step_cells = 1.0;  // step of the interaction-target ray walk
};

// The decision core: navigate when the goal is reachable and no manipulable
// gain exceeds epsilon; otherwise interact with the argmax-gain manipulable
// object (ties: higher gain, smaller counterfactual length, lexicographic id);
// infeasible when unreachable and nothing qualifies.
Reasoning select_target(const OccupancyMap& occ, const std::vector<ObjectInstance>& objects,
                        Cell start, Cell goal, const SkillProfile& profile, double epsilon,
                        const ReasonOptions& options = {});

// First traversable cell on the ray robot -> object extended past the object,
// at least r_clear away from every footprint cell; walks in steps of one cell
// length and fails with NoClearPoint when the ray exits the grid first.
Cell interaction_target_point(Cell robot, const Eigen::Vector2d& object_xy,
                              const std::vector<Cell>& footprint,
                              const TraversabilityMap& cf_map, double r_clear);

// n surface points drawn without replacement (all points when n >= size),
// deterministic per seed.
std::vector<Eigen::Vector3d> sample_contact_points(const ObjectInstance& obj, int n,
                                                   std::uint64_t seed);

}  // namespace coins
