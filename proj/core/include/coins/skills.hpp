#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "coins/geometry.hpp"
#include "coins/grid.hpp"

namespace coins {

inline constexpr const char* kSkillNavigate = "navigate";
inline constexpr const char* kSkillManipulation = "traversability_manipulation";
inline constexpr const char* kSkillDoorOpening = "door_opening";

// Parametric capabilities of one embodiment: what it can step over, how much
// lateral clearance it needs, what it can move and from how far.
struct SkillProfile {
  std::string name = "legged_manipulator";
  std::set<std::string> skills;
  double traversal_height = 0.25;  // h_max, meters
  double clearance_width = 0.4;    // w_clear, meters
  std::set<std::string> manipulable_categories;
  double workspace_radius = 0.7;  // meters, reach from the base
  std::map<std::string, std::string> category_skills;  // category -> skill
  std::string description;  // capability text used in VQA prompts

  double inflation_radius() const { return clearance_width * 0.5; }

  void validate() const;

  static SkillProfile legged_manipulator();
  static SkillProfile navigation_only();
  static std::map<std::string, std::string> default_category_skills();
};

std::string describe_profile(const SkillProfile& p);

// Skill for a category from the profile's mapping table.
std::string select_skill(const std::string& category, const SkillProfile& profile);

struct DoorSpec {
  Eigen::Vector2d hinge{0, 0};
  Eigen::Vector2d handle{0, 0};
  std::string hinge_side = "left";  // which jamb carries the hinge
};

// A movable entity in the scene.
struct ObjectInstance {
  std::string id;
  std::string category;
  Eigen::Vector3d position{0, 0, 0};  // planning frame; z is height of the reference point
  std::vector<Cell> footprint;
  PointCloud surface_points;
  double height = 0.0;  // top of the object above ground, meters
  int resistance = 1;   // push effort tag; scales the displacement budget
  std::optional<DoorSpec> door;

  void validate() const;
};

}  // namespace coins
