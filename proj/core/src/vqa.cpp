#include "coins/vqa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coins {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_pt(const Eigen::Vector2d& p) {
  return "(" + fmt6(p.x()) + ", " + fmt6(p.y()) + ")";
}

// Nearest traversable cell-center distance to the object's ground position.
double nearest_base_distance(const ObjectInstance& obj, const TraversabilityMap& trav) {
  double best = std::numeric_limits<double>::infinity();
  for (int y = 0; y < trav.spec.height; ++y) {
    for (int x = 0; x < trav.spec.width; ++x) {
      const Cell c{x, y};
      if (!trav.at(c)) continue;
      const double dx = trav.spec.center_x(c) - obj.position.x();
      const double dy = trav.spec.center_y(c) - obj.position.y();
      best = std::min(best, std::sqrt(dx * dx + dy * dy));
    }
  }
  return best;
}

struct Grounding {
  OccupancyMap occ;
  TraversabilityMap trav;
  Cell robot;
  Cell goal;
  std::vector<ObjectInstance> objects;  // sorted by id
  Reasoning reasoning;
};

Grounding ground_scene(const Scenario& scenario, const Eigen::Vector2d& pose,
                       const Eigen::Vector2d& goal, const SkillProfile& profile,
                       double epsilon, std::uint64_t seed) {
  Grounding g;
  g.occ = scenario.initial_occupancy(profile.traversal_height);
  g.trav = inflate(g.occ, profile.inflation_radius());
  if (!scenario.grid.contains_point(pose.x(), pose.y()))
    throw OutOfBounds("robot pose outside the grid");
  if (!scenario.grid.contains_point(goal.x(), goal.y()))
    throw OutOfBounds("goal outside the grid");
  g.robot = scenario.grid.cell_at(pose.x(), pose.y());
  g.goal = scenario.grid.cell_at(goal.x(), goal.y());
  g.objects = scenario.movables;
  std::sort(g.objects.begin(), g.objects.end(),
            [](const ObjectInstance& a, const ObjectInstance& b) { return a.id < b.id; });
  ReasonOptions opts;
  opts.seed = seed;
  g.reasoning = select_target(g.occ, g.objects, g.robot, g.goal, profile, epsilon, opts);
  return g;
}

std::string build_feasibility(const Grounding& g, const SkillProfile& profile) {
  std::ostringstream out;
  out << "Capability: traversal height limit " << fmt6(profile.traversal_height)
      << " m, clearance width " << fmt6(profile.clearance_width) << " m, manipulation range "
      << fmt6(profile.workspace_radius) << " m.\n";
  for (const auto& obj : g.objects) {
    out << "Object " << obj.id << " (" << obj.category << "): height " << fmt6(obj.height)
        << " m vs limit " << fmt6(profile.traversal_height) << " m -> "
        << (obj.height > profile.traversal_height ? "blocks traversal" : "traversable") << "; ";
    if (!profile.manipulable_categories.count(obj.category)) {
      out << "category not manipulable.\n";
      continue;
    }
    const double d = nearest_base_distance(obj, g.trav);
    out << "nearest base cell " << fmt6(d) << " m vs range " << fmt6(profile.workspace_radius)
        << " m -> " << (d <= profile.workspace_radius ? "within reach" : "out of reach")
        << ".\n";
  }
  return out.str();
}

std::string build_necessity(const Grounding& g, double epsilon) {
  std::ostringstream out;
  if (g.reasoning.base_length.is_infinite()) {
    out << "The goal is currently unreachable.\n";
  } else {
    out << "The goal is reachable with path length " << fmt6(g.reasoning.base_length.meters())
        << " m.\n";
  }
  if (const auto* act = std::get_if<Interact>(&g.reasoning.decision)) {
    out << "Removing " << act->target_id << " gives gain " << fmt6(act->gain)
        << " above threshold " << fmt6(epsilon)
        << ", so the object obstructs the route and interaction helps.\n";
  } else if (std::holds_alternative<Navigate>(g.reasoning.decision)) {
    out << "No manipulable object exceeds the gain threshold " << fmt6(epsilon)
        << ", so no obstruction needs to be moved; navigate directly.\n";
  } else {
    out << "No manipulable object exceeds the gain threshold " << fmt6(epsilon)
        << " and no route exists, so the task is infeasible.\n";
  }
  return out.str();
}

}  // namespace

std::string VQASample::identity() const {
  std::ostringstream os;
  os << scenario_name << '|' << fmt6(robot_pose.x()) << ',' << fmt6(robot_pose.y()) << '|'
     << fmt6(goal.x()) << ',' << fmt6(goal.y()) << '|' << profile_name;
  return os.str();
}

std::string VQASample::to_json_line() const {
  ordered_json j;
  j["v"] = 1;
  j["scenario"] = scenario_name;
  j["profile"] = profile_name;
  j["pose"] = {robot_pose.x(), robot_pose.y()};
  j["goal"] = {goal.x(), goal.y()};
  j["epsilon"] = epsilon;
  j["profile_description"] = profile_description;
  j["question"] = question;
  j["cot_feasibility"] = cot.feasibility;
  j["cot_necessity"] = cot.necessity;
  ordered_json a;
  a["skill"] = answer.skill;
  if (answer.target_id) {
    a["target"] = *answer.target_id;
    a["target_world"] = {answer.target_world->x(), answer.target_world->y()};
    a["target_cell"] = {answer.target_cell->x, answer.target_cell->y};
  }
  j["answer"] = a;
  j["split"] = split;
  return j.dump();
}

VQASample VQASample::from_json_line(const std::string& line) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError("vqa record is not valid JSON");
  if (j.value("v", 0) != 1) throw SchemaVersionError("vqa record version != 1");
  VQASample s;
  s.scenario_name = j.at("scenario").get<std::string>();
  s.profile_name = j.at("profile").get<std::string>();
  s.robot_pose = Eigen::Vector2d(j.at("pose")[0].get<double>(), j.at("pose")[1].get<double>());
  s.goal = Eigen::Vector2d(j.at("goal")[0].get<double>(), j.at("goal")[1].get<double>());
  s.epsilon = j.at("epsilon").get<double>();
  s.profile_description = j.value("profile_description", "");
  s.question = j.value("question", "");
  s.cot.feasibility = j.at("cot_feasibility").get<std::string>();
  s.cot.necessity = j.at("cot_necessity").get<std::string>();
  const auto& a = j.at("answer");
  s.answer.skill = a.at("skill").get<std::string>();
  if (a.contains("target")) {
    s.answer.target_id = a.at("target").get<std::string>();
    s.answer.target_world = Eigen::Vector2d(a.at("target_world")[0].get<double>(),
                                            a.at("target_world")[1].get<double>());
    s.answer.target_cell =
        Cell{a.at("target_cell")[0].get<int>(), a.at("target_cell")[1].get<int>()};
  }
  s.split = j.value("split", "");
  return s;
}

VQASample generate_sample(const Scenario& scenario, const Eigen::Vector2d& robot_pose,
                          const Eigen::Vector2d& goal, const SkillProfile& profile,
                          const VqaOptions& options) {
  try {
    const Grounding g =
        ground_scene(scenario, robot_pose, goal, profile, options.epsilon, options.seed);

    VQASample s;
    s.scenario_name = scenario.name;
    s.robot_pose = robot_pose;
    s.goal = goal;
    s.profile_name = profile.name;
    s.profile_description =
        profile.description.empty() ? describe_profile(profile) : profile.description;
    s.epsilon = options.epsilon;
    s.question = "The robot is at " + fmt_pt(robot_pose) + " m and must reach the goal at " +
                 fmt_pt(goal) + " m. " + s.profile_description +
                 " Should the robot navigate directly, interact with an object first, or is "
                 "the goal infeasible? Name the skill and, if interacting, the target object.";
    s.cot.feasibility = build_feasibility(g, profile);
    s.cot.necessity = build_necessity(g, options.epsilon);

    if (const auto* act = std::get_if<Interact>(&g.reasoning.decision)) {
      s.answer.skill = act->skill;
      s.answer.target_id = act->target_id;
      if (act->params.target_world) {
        s.answer.target_world = act->params.target_world;
        s.answer.target_cell = act->params.target_cell;
      } else {
        // fall back to the object's own ground position
        const ObjectInstance* obj = nullptr;
        for (const auto& o : g.objects)
          if (o.id == act->target_id) obj = &o;
        s.answer.target_world = Eigen::Vector2d(obj->position.x(), obj->position.y());
        s.answer.target_cell = scenario.grid.cell_at(obj->position.x(), obj->position.y());
      }
    } else if (std::holds_alternative<Navigate>(g.reasoning.decision)) {
      s.answer.skill = kSkillNavigate;
    } else {
      s.answer.skill = "infeasible";
    }
    return s;
  } catch (const SampleSkipped&) {
    throw;
  } catch (const Error& e) {
    throw SampleSkipped(e.what());
  }
}

std::vector<double> extract_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      char* end = nullptr;
      const double v = std::strtod(text.c_str() + i, &end);
      out.push_back(v);
      i = static_cast<std::size_t>(end - text.c_str());
    } else {
      ++i;
    }
  }
  return out;
}

bool verify_sample(const VQASample& sample, const Scenario& scenario,
                   const SkillProfile& profile) {
  Grounding g;
  try {
    g = ground_scene(scenario, sample.robot_pose, sample.goal, profile, sample.epsilon, 0);
  } catch (const Error&) {
    return false;
  }

  // (a) The answer must match the recomputed decision.
  if (const auto* act = std::get_if<Interact>(&g.reasoning.decision)) {
    if (sample.answer.skill != act->skill) return false;
    if (!sample.answer.target_id || *sample.answer.target_id != act->target_id) return false;
  } else if (std::holds_alternative<Navigate>(g.reasoning.decision)) {
    if (sample.answer.skill != kSkillNavigate) return false;
    if (sample.answer.target_id) return false;
  } else {
    if (sample.answer.skill != "infeasible") return false;
  }

  // (b) Every phase-1 numeric equals the recomputed scene/profile value.
  const std::vector<double> claimed = extract_numbers(sample.cot.feasibility);
  const std::vector<double> truth = extract_numbers(build_feasibility(g, profile));
  if (claimed.size() != truth.size()) return false;
  for (std::size_t i = 0; i < claimed.size(); ++i) {
    if (std::abs(claimed[i] - truth[i]) > 1e-6) return false;
  }

  // (c) Interactive targets must be geometrically manipulable.
  if (sample.answer.target_id) {
    const ObjectInstance* obj = nullptr;
    for (const auto& o : g.objects) {
      if (o.id == *sample.answer.target_id) obj = &o;
    }
    if (!obj || !check_manipulable(*obj, g.trav, profile)) return false;
  }
  return true;
}

std::vector<VQASample> generate_samples(const std::vector<Scenario>& scenarios,
                                        int poses_per_scene,
                                        const std::vector<SkillProfile>& profiles,
                                        std::uint64_t seed, int* skipped) {
  if (scenarios.empty() || profiles.empty() || poses_per_scene < 1)
    throw EmptyInput("generate_samples: scenarios, profiles and poses_per_scene required");

  int skip_count = 0;
  std::vector<VQASample> samples;
  for (const auto& scenario : scenarios) {
    for (const auto& profile : profiles) {
      const OccupancyMap occ = scenario.initial_occupancy(profile.traversal_height);
      const TraversabilityMap trav = inflate(occ, profile.inflation_radius());
      std::vector<Cell> free_cells;
      for (int y = 0; y < trav.spec.height; ++y)
        for (int x = 0; x < trav.spec.width; ++x)
          if (trav.at({x, y})) free_cells.push_back({x, y});
      if (free_cells.size() < 2) continue;

      Rng rng(mix64(seed ^ fnv1a64(scenario.name) ^ fnv1a64(profile.name)));
      for (int k = 0; k < poses_per_scene; ++k) {
        const Cell pc = free_cells[rng.below(free_cells.size())];
        const Cell gc = free_cells[rng.below(free_cells.size())];
        const Eigen::Vector2d pose(trav.spec.center_x(pc), trav.spec.center_y(pc));
        const Eigen::Vector2d goal(trav.spec.center_x(gc), trav.spec.center_y(gc));
        try {
          VQASample s = generate_sample(scenario, pose, goal, profile);
          if (verify_sample(s, scenario, profile)) {
            samples.push_back(std::move(s));
          } else {
            ++skip_count;
          }
        } catch (const SampleSkipped&) {
          ++skip_count;
        }
      }
    }
  }
  if (skipped) *skipped = skip_count;
  return samples;
}

void assign_split(std::vector<VQASample>& samples, std::uint64_t seed) {
  struct Ranked {
    std::uint64_t rank;
    std::string identity;
    VQASample* sample;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(samples.size());
  for (auto& s : samples) {
    const std::string id = s.identity();
    ranked.push_back({mix64(seed ^ fnv1a64(id)), id, &s});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.identity < b.identity;
  });
  const auto test_count =
      static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(samples.size())));
  for (std::size_t i = 0; i < ranked.size(); ++i)
    ranked[i].sample->split = i < test_count ? "test" : "train";
}

DatasetCounts generate_dataset(const std::vector<Scenario>& scenarios, int poses_per_scene,
                               const std::vector<SkillProfile>& profiles,
                               const std::string& out_path, std::uint64_t seed) {
  DatasetCounts counts;
  std::vector<VQASample> samples =
      generate_samples(scenarios, poses_per_scene, profiles, seed, &counts.skipped);
  assign_split(samples, seed);
  std::sort(samples.begin(), samples.end(),
            [](const VQASample& a, const VQASample& b) { return a.identity() < b.identity(); });

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IOError("cannot write dataset file: " + out_path);
  for (const auto& s : samples) {
    out << s.to_json_line() << "\n";
    ++counts.total;
    if (s.split == "test") ++counts.test;
    else ++counts.train;
  }
  return counts;
}

}  // namespace coins
