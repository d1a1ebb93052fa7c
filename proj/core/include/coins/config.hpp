#pragma once

#include "coins/episodes.hpp"

namespace coins {

// Effective tool configuration. Precedence is flags > config file > defaults;
// unknown keys in a config file are rejected.
struct RunConfig {
  SkillProfile profile = SkillProfile::legged_manipulator();
  double epsilon = 0.05;
  double resolution = 0.05;
  double sensor_range = 4.0;
  double success_threshold = 0.5;
  int max_steps = 0;  // 0 = auto
  int max_retries = 3;
  double slip_prob = 0.0;
  int contact_samples = 5;
  int push_base_cap = 12;
  std::uint64_t seed = 0;
  std::string output_dir;

  EpisodeConfig episode_config() const;
  void validate() const;
};

RunConfig config_from_json(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& c);

// Builtin profile by name ("legged_manipulator", "navigation_only") or a JSON
// profile file when the argument names an existing path.
SkillProfile resolve_profile(const std::string& name_or_path);
SkillProfile profile_from_json(const std::string& text, const std::string& origin);
std::string dump_profile(const SkillProfile& p);

}  // namespace coins
