#include "coins/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <nlohmann/json.hpp>

namespace coins {

using nlohmann::json;

const RewardTerm* RewardBreakdown::find(const std::string& name) const {
  for (const auto& t : terms) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

double phi(const Eigen::VectorXd& x) {
  if (!x.allFinite()) throw NonFiniteInput("phi: non-finite input");
  return std::exp(-x.squaredNorm() / 0.25);
}

double phi_scalar(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return phi(v);
}

namespace {

template <typename T>
const T& require(const std::optional<T>& field, const char* symbol) {
  if (!field) throw MissingField(symbol);
  return *field;
}

void require_dim(const Eigen::VectorXd& v, int n, const char* symbol) {
  if (v.size() != n)
    throw DimensionMismatch(std::string(symbol) + ": expected " + std::to_string(n) +
                            " entries, got " + std::to_string(v.size()));
}

struct BreakdownBuilder {
  RewardBreakdown b;

  void term(const std::string& name, const std::string& group, double raw, double weight) {
    RewardTerm t;
    t.name = name;
    t.group = group;
    t.raw = raw;
    t.weight = weight;
    t.weighted = raw * weight;
    b.total += t.weighted;
    b.terms.push_back(std::move(t));
  }
};

}  // namespace

RewardBreakdown lowlevel_reward(const RobotState& state, const CommandState& cmd,
                                const LowLevelParams& params) {
  const auto& v_b = require(state.base_lin_vel, "v_b");
  const auto& w_b = require(state.base_ang_vel, "omega_b");
  const auto& x_ee = require(state.ee_pos, "x_ee");
  const auto& q = require(state.joint_pos, "q_j");
  const auto& qdd = require(state.joint_acc, "ddq_j");
  const auto& tau = require(state.joint_torque, "tau_j");
  const auto& air = require(state.feet_air_time, "t_air_f");
  const auto& contact = require(state.feet_contact, "feet_contact");
  const auto& feet_vel = require(state.feet_vel, "feet_vel");
  const int n_c = require(state.collision_count, "n_c");

  const auto& v_cmd = require(cmd.base_lin_vel_cmd, "v*_b");
  const auto& w_cmd = require(cmd.base_ang_vel_cmd, "omega*_b");
  const auto& ee_cmd = require(cmd.ee_pos_cmd, "x*_ee");
  const auto& q_cmd = require(cmd.joint_pos_cmd, "q*_j");
  const auto& q_cmd_prev = require(cmd.joint_pos_cmd_prev, "q*_j_pre");

  require_dim(q, 18, "q_j");
  require_dim(qdd, 18, "ddq_j");
  require_dim(tau, 18, "tau_j");
  require_dim(q_cmd, 18, "q*_j");
  require_dim(q_cmd_prev, 18, "q*_j_pre");

  BreakdownBuilder out;
  out.term("linear_velocity_tracking", "", phi(v_cmd.head<2>() - v_b.head<2>()), 1.0);
  out.term("angular_velocity_tracking", "", phi_scalar(w_cmd.z() - w_b.z()), 0.5);
  out.term("ee_position_tracking", "", phi(ee_cmd - x_ee), 1.0);
  out.term("linear_velocity_penalty", "", -(v_b.z() * v_b.z()), 2.0);
  out.term("angular_velocity_penalty", "", -w_b.head<2>().squaredNorm(), 0.05);
  out.term("joint_torques", "", -tau.squaredNorm(), 1e-5);
  out.term("joint_accelerations", "", -qdd.squaredNorm(), 2.5e-7);
  out.term("action_rate", "", -(q_cmd - q_cmd_prev).squaredNorm(), 0.01);
  out.term("collisions", "", -static_cast<double>(n_c), 1.0);

  double air_sum = 0.0;
  for (double t : air) air_sum += t - 0.5;
  out.term("feet_air_time", "", air_sum, 0.125);

  // Prose-only rows: deviation of the 12 leg joints from a nominal pose and
  // the planar speed of feet in contact; the listed weights carry the sign.
  const Eigen::VectorXd legs = q.head(12);
  out.term("foot_joint_position", "", (legs - params.nominal_leg_pos).squaredNorm(), -0.7);

  double slide = 0.0;
  for (int f = 0; f < 4; ++f) {
    if (contact[f]) slide += feet_vel[f].head<2>().norm();
  }
  out.term("feet_slide", "", slide, -0.2);
  return out.b;
}

double point_to_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                                 const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double len_sq = ab.squaredNorm();
  if (len_sq == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double obstacle_clearance(const RobotState& state, const CommandState& cmd) {
  const auto& x_o = require(cmd.object_pos, "x_o");
  const auto& x_b = require(state.base_pos, "x_b");
  const auto& x_b_cmd = require(cmd.base_pos_cmd, "x*_b");
  return point_to_segment_distance(x_o, x_b, x_b_cmd);
}

RewardBreakdown tom_reward(const RobotState& state, const CommandState& cmd,
                           double obstacle_clearance) {
  if (obstacle_clearance < 0.0) throw Error("tom_reward: obstacle clearance must be >= 0");
  const auto& x_b = require(state.base_pos, "x_b");
  const auto& w_b = require(state.base_ang_vel, "omega_b");
  const auto& tau = require(state.joint_torque, "tau_j");
  const int n_c = require(state.collision_count, "n_c");
  const auto& x_b_cmd = require(cmd.base_pos_cmd, "x*_b");
  const auto& q_cmd = require(cmd.joint_pos_cmd, "q*_j");
  const auto& q_cmd_prev = require(cmd.joint_pos_cmd_prev, "q*_j_pre");
  require_dim(tau, 18, "tau_j");
  require_dim(q_cmd, 18, "q*_j");
  require_dim(q_cmd_prev, 18, "q*_j_pre");

  BreakdownBuilder out;
  out.term("position_tracking", "nav", phi(x_b_cmd - x_b), 5.0);
  out.term("obstacle_clearance", "nav", obstacle_clearance, 1.0);
  out.term("body_collision_penalty", "safe", -static_cast<double>(n_c), 10.0);
  out.term("stability_penalty", "safe", -w_b.head<2>().squaredNorm(), 0.1);
  out.term("joint_torques", "eff", -tau.squaredNorm(), 1e-5);
  out.term("action_rate", "eff", -(q_cmd - q_cmd_prev).squaredNorm(), 0.01);
  return out.b;
}

RewardBreakdown door_reward(const RobotState& state, const CommandState& cmd) {
  const auto& x_ee = require(state.ee_pos, "x_ee");
  const auto& w_b = require(state.base_ang_vel, "omega_b");
  const auto& tau = require(state.joint_torque, "tau_j");
  const int n_c = require(state.collision_count, "n_c");
  const double theta = require(cmd.door_angle, "theta_door");
  const double theta_cmd = require(cmd.door_angle_cmd, "theta*_door");
  const auto& handle = require(cmd.handle_pos, "x_handle");
  require_dim(tau, 18, "tau_j");

  BreakdownBuilder out;
  out.term("door_angle_tracking", "", phi_scalar(theta_cmd - theta), 5.0);
  out.term("ee_to_handle", "", -(x_ee - handle).norm(), 1.0);
  out.term("body_collision_penalty", "", -static_cast<double>(n_c), 10.0);
  out.term("stability_penalty", "", -w_b.head<2>().squaredNorm(), 0.1);
  out.term("joint_torques", "", -tau.squaredNorm(), 1e-5);
  return out.b;
}

namespace {

std::optional<Eigen::VectorXd> vec_field(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& a = j.at(key);
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
  return v;
}

std::optional<Eigen::Vector3d> vec3_field(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& a = j.at(key);
  if (a.size() != 3) throw DimensionMismatch(std::string(key) + ": expected 3 entries");
  return Eigen::Vector3d(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

json parse_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError("snapshot record is not valid JSON");
  return j;
}

}  // namespace

RobotState robot_state_from_json(const std::string& json_line) {
  const json j = parse_line(json_line);
  RobotState s;
  s.joint_pos = vec_field(j, "joint_pos");
  s.joint_vel = vec_field(j, "joint_vel");
  s.joint_acc = vec_field(j, "joint_acc");
  s.joint_torque = vec_field(j, "joint_torque");
  s.base_lin_vel = vec3_field(j, "base_lin_vel");
  s.base_ang_vel = vec3_field(j, "base_ang_vel");
  s.base_pos = vec3_field(j, "base_pos");
  if (j.contains("base_heading")) s.base_heading = j.at("base_heading").get<double>();
  s.ee_pos = vec3_field(j, "ee_pos");
  if (j.contains("feet_air_time")) {
    const auto& a = j.at("feet_air_time");
    if (a.size() != 4) throw DimensionMismatch("feet_air_time: expected 4 entries");
    std::array<double, 4> t{};
    for (int i = 0; i < 4; ++i) t[i] = a[i].get<double>();
    s.feet_air_time = t;
  }
  if (j.contains("feet_contact")) {
    const auto& a = j.at("feet_contact");
    if (a.size() != 4) throw DimensionMismatch("feet_contact: expected 4 entries");
    std::array<bool, 4> c{};
    for (int i = 0; i < 4; ++i) c[i] = a[i].get<bool>();
    s.feet_contact = c;
  }
  if (j.contains("feet_vel")) {
    const auto& a = j.at("feet_vel");
    if (a.size() != 4) throw DimensionMismatch("feet_vel: expected 4 vectors");
    std::array<Eigen::Vector3d, 4> v;
    for (int i = 0; i < 4; ++i) {
      if (a[i].size() != 3) throw DimensionMismatch("feet_vel: expected 3 entries per foot");
      v[i] = Eigen::Vector3d(a[i][0].get<double>(), a[i][1].get<double>(), a[i][2].get<double>());
    }
    s.feet_vel = v;
  }
  if (j.contains("collisions")) s.collision_count = j.at("collisions").get<int>();
  return s;
}

CommandState command_state_from_json(const std::string& json_line) {
  const json j = parse_line(json_line);
  CommandState c;
  c.base_lin_vel_cmd = vec3_field(j, "base_lin_vel_cmd");
  c.base_ang_vel_cmd = vec3_field(j, "base_ang_vel_cmd");
  c.base_pos_cmd = vec3_field(j, "base_pos_cmd");
  c.ee_pos_cmd = vec3_field(j, "ee_pos_cmd");
  c.joint_pos_cmd = vec_field(j, "joint_pos_cmd");
  c.joint_pos_cmd_prev = vec_field(j, "joint_pos_cmd_prev");
  c.object_pos = vec3_field(j, "object_pos");
  c.object_pos_cmd = vec3_field(j, "object_pos_cmd");
  constexpr double deg = std::numbers::pi / 180.0;
  if (j.contains("door_angle_deg")) c.door_angle = j.at("door_angle_deg").get<double>() * deg;
  if (j.contains("door_angle_cmd_deg"))
    c.door_angle_cmd = j.at("door_angle_cmd_deg").get<double>() * deg;
  c.handle_pos = vec3_field(j, "handle_pos");
  return c;
}

std::string format_breakdown(const RewardBreakdown& b) {
  std::string out;
  char buf[160];
  for (const auto& t : b.terms) {
    std::snprintf(buf, sizeof(buf), "%-26s %-5s raw=%- .9g weight=%- .9g weighted=%- .9g\n",
                  t.name.c_str(), t.group.c_str(), t.raw, t.weight, t.weighted);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-26s %.12g\n", "total", b.total);
  out += buf;
  return out;
}

}  // namespace coins
