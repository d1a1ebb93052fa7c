#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "coins/error.hpp"

namespace coins {

// Pinhole camera intrinsics.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;
};

enum class DepthUnits { relative, meters };

// Per-pixel depth with an explicit validity mask. Invalid pixels keep whatever
// value the producer left behind; only masked-valid pixels are meaningful.
struct DepthImage {
  int width = 0;
  int height = 0;
  DepthUnits units = DepthUnits::relative;
  std::vector<float> values;   // row-major, width*height
  std::vector<std::uint8_t> valid;  // 0/1, width*height

  static DepthImage create(int w, int h, DepthUnits u);

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * width + u;
  }
  bool is_valid(int u, int v) const { return valid[index(u, v)] != 0; }
  float at(int u, int v) const { return values[index(u, v)]; }
  void set(int u, int v, float z) {
    values[index(u, v)] = z;
    valid[index(u, v)] = 1;
  }

  void check() const;  // dimensions consistent, valid values finite and > 0
};

struct PixelRef {
  int u = 0;
  int v = 0;
};

// 3D points, optionally with the source pixel of every point.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<PixelRef> pixels;  // empty, or one entry per point

  std::size_t size() const { return points.size(); }
  bool has_provenance() const { return !pixels.empty(); }
};

struct PlaneModel {
  Eigen::Vector3d normal{0, 1, 0};  // unit
  double d = 0.0;                   // normal.dot(p) + d == 0 on the plane
  std::vector<int> inliers;         // indices into the fitted cloud

  double signed_distance(const Eigen::Vector3d& p) const {
    return normal.dot(p) + d;
  }
};

struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  RigidTransform compose(const RigidTransform& other) const {
    return {rotation * other.rotation, rotation * other.translation + translation};
  }

  RigidTransform inverse() const {
    Eigen::Matrix3d rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }

  // Orthonormal with det +1, within tol.
  bool is_rigid(double tol = 1e-9) const;
};

struct RansacParams {
  int iterations = 1000;
  double inlier_tol = 0.02;  // meters
  std::uint64_t seed = 0;
  // The fitted normal is flipped so normal.dot(up_hint) >= 0. Clouds still in
  // the raw camera frame (image v growing downward) should pass (0,-1,0).
  Eigen::Vector3d up_hint{0, 1, 0};
};

// Global scale between a relative and a metric depth map: the exact median of
// per-pixel ratios metric/rel over the pixels valid in both. Even-cardinality
// median is the mean of the two middle ratios.
double align_depth_scale(const DepthImage& rel, const DepthImage& metric);

// Z = s * rel on valid pixels; mask preserved; output tagged metric.
DepthImage rectify_depth(const DepthImage& rel, double scale);

// One point per valid pixel via inverse projection, with pixel provenance.
PointCloud backproject(const DepthImage& depth, const Intrinsics& k);

// RANSAC over the candidate subset, then least-squares refit on the consensus
// inliers; the returned inlier set is re-evaluated against the refit plane.
PlaneModel fit_ground_plane(const PointCloud& cloud,
                            const std::vector<int>& candidates,
                            const RansacParams& params = {});

// Basis from the plane normal and a forward hint: row-major rotation rows are
// u_x, u_y, u_z with u_y the unit normal, u_x = normalize(u_y x fwd),
// u_z = u_x x u_y. Translation moves ground_point to the origin.
RigidTransform build_canonical_transform(const PlaneModel& plane,
                                         const Eigen::Vector3d& forward_hint,
                                         const Eigen::Vector3d& ground_point);

PointCloud transform_cloud(const PointCloud& cloud, const RigidTransform& t);

// New camera extrinsics after the scene was moved by `alignment`:
// T_new = T * alignment^-1, so T_new * alignment == T.
RigidTransform update_extrinsics(const RigidTransform& camera_pose,
                                 const RigidTransform& alignment);

// Candidate selector for fully synthetic inputs when no semantic ground mask
// is available: indices of the lowest `fraction` of points along `up`.
std::vector<int> select_low_points(const PointCloud& cloud,
                                   const Eigen::Vector3d& up,
                                   double fraction = 0.2);

Eigen::Vector3d inlier_centroid(const PointCloud& cloud, const std::vector<int>& idx);

// Pure axis relabeling from the canonical y-up frame (x lateral, y up,
// z forward) to the planning frame used by the grid modules (x,y horizontal,
// z up): x_p = z_c, y_p = x_c, z_p = y_c. A proper rotation (det +1).
RigidTransform planning_frame_rotation();

}  // namespace coins
