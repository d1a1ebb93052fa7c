#pragma once

#include "coins/episodes.hpp"

namespace coins {

struct CoTTrace {
  std::string feasibility;  // phase 1: capability checks with numbers
  std::string necessity;    // phase 2: causal rationale
};

struct VqaAnswer {
  std::string skill;  // "navigate", an interaction skill, or "infeasible"
  std::optional<std::string> target_id;
  std::optional<Eigen::Vector2d> target_world;
  std::optional<Cell> target_cell;
};

struct VQASample {
  std::string scenario_name;
  Eigen::Vector2d robot_pose{0, 0};
  Eigen::Vector2d goal{0, 0};
  std::string profile_name;
  std::string profile_description;
  double epsilon = 0.05;
  std::string question;
  CoTTrace cot;
  VqaAnswer answer;
  std::string split;  // "train" | "test", assigned at dataset time

  // Stable key for the split hash and the writer's sort order.
  std::string identity() const;
  std::string to_json_line() const;
  static VQASample from_json_line(const std::string& line);
};

struct VqaOptions {
  double epsilon = 0.05;
  std::uint64_t seed = 0;
};

// One record from the full grounding + reasoning pipeline on the scenario's
// initial layout with privileged knowledge. Reasoner errors surface as
// SampleSkipped.
VQASample generate_sample(const Scenario& scenario, const Eigen::Vector2d& robot_pose,
                          const Eigen::Vector2d& goal, const SkillProfile& profile,
                          const VqaOptions& options = {});

// Recomputes the decision and checks (a) the answer matches, (b) every
// phase-1 numeric equals the recomputed scene/profile value within 1e-6,
// (c) an interactive target is geometrically manipulable.
bool verify_sample(const VQASample& sample, const Scenario& scenario,
                   const SkillProfile& profile);

struct DatasetCounts {
  int total = 0;
  int train = 0;
  int test = 0;
  int skipped = 0;
};

// Verified samples only, written as JSONL in identity order with an exact,
// order-invariant 90/10 split keyed by seeded identity hash.
DatasetCounts generate_dataset(const std::vector<Scenario>& scenarios, int poses_per_scene,
                               const std::vector<SkillProfile>& profiles,
                               const std::string& out_path, std::uint64_t seed);

// In-memory variant used by generate_dataset and the tests.
std::vector<VQASample> generate_samples(const std::vector<Scenario>& scenarios,
                                        int poses_per_scene,
                                        const std::vector<SkillProfile>& profiles,
                                        std::uint64_t seed, int* skipped = nullptr);
void assign_split(std::vector<VQASample>& samples, std::uint64_t seed);

// All numbers appearing in a CoT text, in order; the verifier compares these
// positionally against recomputed values.
std::vector<double> extract_numbers(const std::string& text);

}  // namespace coins
