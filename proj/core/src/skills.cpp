#include "coins/skills.hpp"

#include <cstdio>

namespace coins {

namespace {

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void SkillProfile::validate() const {
  if (traversal_height < 0.0) throw Error("SkillProfile: traversal_height must be >= 0");
  if (!(clearance_width > 0.0)) throw Error("SkillProfile: clearance_width must be > 0");
  if (workspace_radius < 0.0) throw Error("SkillProfile: workspace_radius must be >= 0");
  for (const auto& cat : manipulable_categories) {
    auto it = category_skills.find(cat);
    if (it == category_skills.end())
      throw Error("SkillProfile: manipulable category '" + cat + "' has no skill mapping");
    if (!skills.count(it->second))
      throw Error("SkillProfile: category '" + cat + "' maps to skill '" + it->second +
                  "' outside the roster");
  }
}

std::map<std::string, std::string> SkillProfile::default_category_skills() {
  return {
      {"box", kSkillManipulation},    {"barrel", kSkillManipulation},
      {"bucket", kSkillManipulation}, {"chair", kSkillManipulation},
      {"door", kSkillDoorOpening},
  };
}

SkillProfile SkillProfile::legged_manipulator() {
  SkillProfile p;
  p.name = "legged_manipulator";
  p.skills = {kSkillNavigate, kSkillManipulation, kSkillDoorOpening};
  p.traversal_height = 0.25;
  p.clearance_width = 0.4;
  p.manipulable_categories = {"box", "barrel", "bucket", "chair", "door"};
  p.workspace_radius = 0.7;
  p.category_skills = default_category_skills();
  p.description = describe_profile(p);
  return p;
}

SkillProfile SkillProfile::navigation_only() {
  SkillProfile p;
  p.name = "navigation_only";
  p.skills = {kSkillNavigate};
  p.traversal_height = 0.25;
  p.clearance_width = 0.4;
  p.manipulable_categories = {};
  p.workspace_radius = 0.0;
  p.category_skills = {};
  p.description = describe_profile(p);
  return p;
}

std::string describe_profile(const SkillProfile& p) {
  std::string skills;
  for (const auto& s : p.skills) {
    if (!skills.empty()) skills += ", ";
    skills += s;
  }
  std::string text = "The robot has skills: " + (skills.empty() ? "none" : skills) +
                     ". It can traverse obstacles lower than " + fmt3(p.traversal_height) +
                     " m and needs a clearance width of " + fmt3(p.clearance_width) + " m.";
  if (p.manipulable_categories.empty()) {
    text += " It cannot manipulate any object.";
  } else {
    std::string cats;
    for (const auto& c : p.manipulable_categories) {
      if (!cats.empty()) cats += ", ";
      cats += c;
    }
    text += " It can manipulate objects of categories {" + cats + "} within " +
            fmt3(p.workspace_radius) + " m of its base.";
  }
  return text;
}

std::string select_skill(const std::string& category, const SkillProfile& profile) {
  auto it = profile.category_skills.find(category);
  if (it == profile.category_skills.end())
    throw UnknownCategory("no skill mapping for category '" + category + "'");
  return it->second;
}

void ObjectInstance::validate() const {
  const bool is_door = category == "door";
  if (!is_door && footprint.empty())
    throw Error("ObjectInstance '" + id + "': non-door object with empty footprint");
  if (is_door != door.has_value())
    throw Error("ObjectInstance '" + id + "': door fields present iff category is door");
  if (resistance < 1) throw Error("ObjectInstance '" + id + "': resistance must be >= 1");
}

}  // namespace coins
