#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coins/error.hpp"

namespace coins {

// Snapshot of the robot. Fields are optional so the evaluators can report
// exactly which symbol a caller left out.
struct RobotState {
  std::optional<Eigen::VectorXd> joint_pos;     // q_j, 18
  std::optional<Eigen::VectorXd> joint_vel;     // dq_j, 18
  std::optional<Eigen::VectorXd> joint_acc;     // ddq_j, 18
  std::optional<Eigen::VectorXd> joint_torque;  // tau_j, 18
  std::optional<Eigen::Vector3d> base_lin_vel;  // v_b
  std::optional<Eigen::Vector3d> base_ang_vel;  // omega_b
  std::optional<Eigen::Vector3d> base_pos;      // x_b
  std::optional<double> base_heading;           // theta_b
  std::optional<Eigen::Vector3d> ee_pos;        // x_ee
  std::optional<std::array<double, 4>> feet_air_time;        // t_air,f
  std::optional<std::array<bool, 4>> feet_contact;
  std::optional<std::array<Eigen::Vector3d, 4>> feet_vel;    // for the slide term
  std::optional<int> collision_count;           // n_c
};

struct CommandState {
  std::optional<Eigen::Vector3d> base_lin_vel_cmd;  // v*_b
  std::optional<Eigen::Vector3d> base_ang_vel_cmd;  // omega*_b
  std::optional<Eigen::Vector3d> base_pos_cmd;      // x*_b
  std::optional<Eigen::Vector3d> ee_pos_cmd;        // x*_ee
  std::optional<Eigen::VectorXd> joint_pos_cmd;       // q*_j, 18
  std::optional<Eigen::VectorXd> joint_pos_cmd_prev;  // q*_j^pre, 18
  std::optional<Eigen::Vector3d> object_pos;        // x_o
  std::optional<Eigen::Vector3d> object_pos_cmd;    // x*_o
  std::optional<double> door_angle;                 // theta_door, radians
  std::optional<double> door_angle_cmd;             // theta*_door, radians
  std::optional<Eigen::Vector3d> handle_pos;        // x_handle
};

struct RewardTerm {
  std::string name;
  std::string group;  // "nav" | "safe" | "eff" for the manipulation skill, else ""
  double raw = 0.0;
  double weight = 0.0;
  double weighted = 0.0;
};

struct RewardBreakdown {
  std::vector<RewardTerm> terms;
  double total = 0.0;

  const RewardTerm* find(const std::string& name) const;
};

// phi(x) = exp(-||x||^2 / 0.25)
double phi(const Eigen::VectorXd& x);
double phi_scalar(double x);

struct LowLevelParams {
  // Nominal leg pose for the deviation penalty and the contact flag source for
  // the slide term are not given anywhere; zeros are a documented default.
  Eigen::VectorXd nominal_leg_pos = Eigen::VectorXd::Zero(12);
};

// The 12-term whole-body controller table.
RewardBreakdown lowlevel_reward(const RobotState& state, const CommandState& cmd,
                                const LowLevelParams& params = {});

// The 6-term traversability-oriented manipulation table; obstacle clearance
// is passed in (see obstacle_clearance for the geometric reading).
RewardBreakdown tom_reward(const RobotState& state, const CommandState& cmd,
                           double obstacle_clearance);

// Distance from the object to the segment from the base to its commanded
// position: dist(x_o, x_b -> x*_b).
double obstacle_clearance(const RobotState& state, const CommandState& cmd);

double point_to_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                                 const Eigen::Vector3d& b);

// The 5-term door-opening table.
RewardBreakdown door_reward(const RobotState& state, const CommandState& cmd);

// JSONL snapshot records for the CLI; door angles are degrees in the file and
// radians in CommandState.
RobotState robot_state_from_json(const std::string& json_line);
CommandState command_state_from_json(const std::string& json_line);
std::string format_breakdown(const RewardBreakdown& b);

}  // namespace coins
