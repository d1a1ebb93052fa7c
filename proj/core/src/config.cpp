#include "coins/config.hpp"

#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "coins/io.hpp"

namespace coins {

using ordered_json = nlohmann::ordered_json;

EpisodeConfig RunConfig::episode_config() const {
  EpisodeConfig e;
  e.sensor_range = sensor_range;
  e.success_threshold = success_threshold;
  e.max_steps = max_steps;
  e.max_retries = max_retries;
  e.epsilon = epsilon;
  e.profile = profile;
  e.seed = seed;
  e.slip_prob = slip_prob;
  e.contact_samples = contact_samples;
  e.push_base_cap = push_base_cap;
  return e;
}

void RunConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must be in [0,1)");
  if (!(resolution > 0.0)) throw ConfigError("resolution must be > 0");
  episode_config().validate();
}

namespace {

void reject_unknown(const ordered_json& j, const std::set<std::string>& known,
                    const std::string& origin, const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key))
      throw ConfigError(origin + ": unknown key '" + scope + key + "'");
  }
}

SkillProfile profile_from(const ordered_json& j, const std::string& origin) {
  reject_unknown(j,
                 {"name", "skills", "traversal_height", "clearance_width",
                  "manipulable_categories", "workspace_radius", "category_skills",
                  "description"},
                 origin, "profile.");
  SkillProfile p = SkillProfile::legged_manipulator();
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  if (j.contains("skills")) {
    p.skills.clear();
    for (const auto& s : j.at("skills")) p.skills.insert(s.get<std::string>());
  }
  if (j.contains("traversal_height")) p.traversal_height = j.at("traversal_height").get<double>();
  if (j.contains("clearance_width")) p.clearance_width = j.at("clearance_width").get<double>();
  if (j.contains("manipulable_categories")) {
    p.manipulable_categories.clear();
    for (const auto& s : j.at("manipulable_categories"))
      p.manipulable_categories.insert(s.get<std::string>());
  }
  if (j.contains("workspace_radius")) p.workspace_radius = j.at("workspace_radius").get<double>();
  if (j.contains("category_skills")) {
    p.category_skills.clear();
    for (const auto& [cat, skill] : j.at("category_skills").items())
      p.category_skills[cat] = skill.get<std::string>();
  }
  p.description = j.contains("description") ? j.at("description").get<std::string>()
                                            : describe_profile(p);
  p.validate();
  return p;
}

}  // namespace

RunConfig config_from_json(const std::string& text, const std::string& origin) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(origin + ": not valid JSON");
  reject_unknown(j,
                 {"profile", "epsilon", "resolution", "sensor_range", "success_threshold",
                  "max_steps", "max_retries", "slip_prob", "contact_samples", "push_base_cap",
                  "seed", "output_dir"},
                 origin, "");
  RunConfig c;
  try {
    if (j.contains("profile")) {
      if (j.at("profile").is_string())
        c.profile = resolve_profile(j.at("profile").get<std::string>());
      else
        c.profile = profile_from(j.at("profile"), origin);
    }
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("resolution")) c.resolution = j.at("resolution").get<double>();
    if (j.contains("sensor_range")) c.sensor_range = j.at("sensor_range").get<double>();
    if (j.contains("success_threshold"))
      c.success_threshold = j.at("success_threshold").get<double>();
    if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<int>();
    if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<int>();
    if (j.contains("slip_prob")) c.slip_prob = j.at("slip_prob").get<double>();
    if (j.contains("contact_samples")) c.contact_samples = j.at("contact_samples").get<int>();
    if (j.contains("push_base_cap")) c.push_base_cap = j.at("push_base_cap").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  return config_from_json(read_text_file(path), path);
}

namespace {

ordered_json profile_json(const SkillProfile& p) {
  ordered_json j;
  j["name"] = p.name;
  j["skills"] = p.skills;
  j["traversal_height"] = p.traversal_height;
  j["clearance_width"] = p.clearance_width;
  j["manipulable_categories"] = p.manipulable_categories;
  j["workspace_radius"] = p.workspace_radius;
  j["category_skills"] = p.category_skills;
  j["description"] = p.description;
  return j;
}

}  // namespace

std::string dump_config(const RunConfig& c) {
  ordered_json j;
  j["profile"] = profile_json(c.profile);
  j["epsilon"] = c.epsilon;
  j["resolution"] = c.resolution;
  j["sensor_range"] = c.sensor_range;
  j["success_threshold"] = c.success_threshold;
  j["max_steps"] = c.max_steps;
  j["max_retries"] = c.max_retries;
  j["slip_prob"] = c.slip_prob;
  j["contact_samples"] = c.contact_samples;
  j["push_base_cap"] = c.push_base_cap;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

SkillProfile profile_from_json(const std::string& text, const std::string& origin) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(origin + ": not valid JSON");
  return profile_from(j, origin);
}

std::string dump_profile(const SkillProfile& p) { return profile_json(p).dump(2) + "\n"; }

SkillProfile resolve_profile(const std::string& name_or_path) {
  if (name_or_path == "legged_manipulator") return SkillProfile::legged_manipulator();
  if (name_or_path == "navigation_only") return SkillProfile::navigation_only();
  if (std::filesystem::exists(name_or_path))
    return profile_from_json(read_text_file(name_or_path), name_or_path);
  throw ConfigError("unknown profile '" + name_or_path +
                    "' (expected a builtin name or a JSON file path)");
}

}  // namespace coins
