#include "coins/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "coins/rng.hpp"

namespace coins {

void Intrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw Error("Intrinsics: focal lengths must be > 0");
  if (width < 1 || height < 1) throw Error("Intrinsics: image dimensions must be >= 1");
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
    throw Error("Intrinsics: principal point outside the image");
}

DepthImage DepthImage::create(int w, int h, DepthUnits u) {
  DepthImage d;
  d.width = w;
  d.height = h;
  d.units = u;
  d.values.assign(static_cast<std::size_t>(w) * h, 0.0f);
  d.valid.assign(static_cast<std::size_t>(w) * h, 0);
  return d;
}

void DepthImage::check() const {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (values.size() != n || valid.size() != n)
    throw DimensionMismatch("depth buffers do not match declared size");
  for (std::size_t i = 0; i < n; ++i) {
    if (valid[i] && (!std::isfinite(values[i]) || values[i] <= 0.0f))
      throw NonPositiveDepth("valid pixel with non-finite or non-positive depth");
  }
}

bool RigidTransform::is_rigid(double tol) const {
  Eigen::Matrix3d err = rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (err.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

double align_depth_scale(const DepthImage& rel, const DepthImage& metric) {
  if (rel.width != metric.width || rel.height != metric.height)
    throw DimensionMismatch("relative and metric depth sizes differ");

  std::vector<double> ratios;
  ratios.reserve(rel.values.size());
  for (std::size_t i = 0; i < rel.values.size(); ++i) {
    if (!rel.valid[i] || !metric.valid[i]) continue;
    const double r = rel.values[i];
    if (r <= 0.0) throw NonPositiveDepth("relative depth <= 0 in the valid intersection");
    ratios.push_back(static_cast<double>(metric.values[i]) / r);
  }
  if (ratios.empty()) throw EmptyIntersection("no pixel valid in both depth maps");

  std::sort(ratios.begin(), ratios.end());
  const std::size_t n = ratios.size();
  if (n % 2 == 1) return ratios[n / 2];
  return 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
}

DepthImage rectify_depth(const DepthImage& rel, double scale) {
  if (!(scale > 0.0)) throw Error("rectify_depth: scale must be > 0");
  DepthImage out = rel;
  out.units = DepthUnits::meters;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (out.valid[i]) out.values[i] = static_cast<float>(scale * out.values[i]);
  }
  return out;
}

PointCloud backproject(const DepthImage& depth, const Intrinsics& k) {
  if (depth.width != k.width || depth.height != k.height)
    throw DimensionMismatch("depth size does not match intrinsics");

  PointCloud cloud;
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      if (!depth.is_valid(u, v)) continue;
      const double z = depth.at(u, v);
      const double x = (u - k.cx) * z / k.fx;
      const double y = (v - k.cy) * z / k.fy;
      cloud.points.emplace_back(x, y, z);
      cloud.pixels.push_back({u, v});
    }
  }
  return cloud;
}

namespace {

// Plane through three points; false when they are (near-)collinear.
bool plane_from_sample(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                       const Eigen::Vector3d& c, Eigen::Vector3d* normal, double* d) {
  Eigen::Vector3d n = (b - a).cross(c - a);
  const double norm = n.norm();
  if (norm < 1e-12) return false;
  n /= norm;
  *normal = n;
  *d = -n.dot(a);
  return true;
}

int count_inliers(const PointCloud& cloud, const std::vector<int>& candidates,
                  const Eigen::Vector3d& n, double d, double tol) {
  int count = 0;
  for (int idx : candidates) {
    if (std::abs(n.dot(cloud.points[idx]) + d) <= tol) ++count;
  }
  return count;
}

// Least-squares plane through the given points: centroid + smallest principal
// direction of the scatter matrix.
bool least_squares_plane(const PointCloud& cloud, const std::vector<int>& idx,
                         Eigen::Vector3d* normal, double* d) {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (int i : idx) centroid += cloud.points[i];
  centroid /= static_cast<double>(idx.size());

  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (int i : idx) {
    Eigen::Vector3d q = cloud.points[i] - centroid;
    scatter += q * q.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
  if (es.info() != Eigen::Success) return false;
  Eigen::Vector3d n = es.eigenvectors().col(0);
  const double norm = n.norm();
  if (norm < 1e-12) return false;
  n /= norm;
  *normal = n;
  *d = -n.dot(centroid);
  return true;
}

}  // namespace

PlaneModel fit_ground_plane(const PointCloud& cloud, const std::vector<int>& candidates,
                            const RansacParams& params) {
  if (candidates.size() < 3)
    throw InsufficientPoints("need at least 3 candidate points, got " +
                             std::to_string(candidates.size()));
  for (int idx : candidates) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= cloud.size())
      throw OutOfBounds("candidate index outside the cloud");
  }

  // Deterministic fallback sample: the first non-collinear triple, if any.
  // Guarantees a valid hypothesis even if every random draw is degenerate,
  // and proves DegenerateInput when no such triple exists.
  int fb0 = candidates[0], fb1 = -1, fb2 = -1;
  for (std::size_t i = 1; i < candidates.size() && fb2 < 0; ++i) {
    const Eigen::Vector3d& a = cloud.points[fb0];
    if (fb1 < 0) {
      if ((cloud.points[candidates[i]] - a).norm() > 1e-12) fb1 = candidates[i];
      continue;
    }
    Eigen::Vector3d n;
    double d;
    if (plane_from_sample(a, cloud.points[fb1], cloud.points[candidates[i]], &n, &d))
      fb2 = candidates[i];
  }
  if (fb2 < 0) throw DegenerateInput("all candidate points are collinear");

  Rng rng(params.seed);
  Eigen::Vector3d best_n;
  double best_d = 0.0;
  int best_count = -1;

  auto consider = [&](const Eigen::Vector3d& n, double d) {
    const int count = count_inliers(cloud, candidates, n, d, params.inlier_tol);
    if (count > best_count) {
      best_count = count;
      best_n = n;
      best_d = d;
    }
  };

  {
    Eigen::Vector3d n;
    double d;
    plane_from_sample(cloud.points[fb0], cloud.points[fb1], cloud.points[fb2], &n, &d);
    consider(n, d);
  }

  const std::size_t m = candidates.size();
  for (int it = 0; it < params.iterations; ++it) {
    std::size_t i0 = rng.below(m);
    std::size_t i1 = rng.below(m);
    std::size_t i2 = rng.below(m);
    if (i0 == i1 || i1 == i2 || i0 == i2) continue;
    Eigen::Vector3d n;
    double d;
    if (!plane_from_sample(cloud.points[candidates[i0]], cloud.points[candidates[i1]],
                           cloud.points[candidates[i2]], &n, &d))
      continue;
    consider(n, d);
  }

  // Consensus set of the best hypothesis, then one least-squares refit.
  std::vector<int> consensus;
  for (int idx : candidates) {
    if (std::abs(best_n.dot(cloud.points[idx]) + best_d) <= params.inlier_tol)
      consensus.push_back(idx);
  }
  Eigen::Vector3d n = best_n;
  double d = best_d;
  if (consensus.size() >= 3) {
    Eigen::Vector3d refit_n;
    double refit_d;
    if (least_squares_plane(cloud, consensus, &refit_n, &refit_d)) {
      n = refit_n;
      d = refit_d;
    }
  }

  if (n.dot(params.up_hint) < 0.0) {
    n = -n;
    d = -d;
  }

  PlaneModel model;
  model.normal = n;
  model.d = d;
  for (int idx : candidates) {
    if (std::abs(model.signed_distance(cloud.points[idx])) <= params.inlier_tol)
      model.inliers.push_back(idx);
  }
  return model;
}

RigidTransform build_canonical_transform(const PlaneModel& plane,
                                         const Eigen::Vector3d& forward_hint,
                                         const Eigen::Vector3d& ground_point) {
  Eigen::Vector3d uy = plane.normal.normalized();
  Eigen::Vector3d ux = uy.cross(forward_hint);
  const double norm = ux.norm();
  if (norm < 1e-9)
    throw ParallelAxes("plane normal is parallel to the forward hint");
  ux /= norm;
  Eigen::Vector3d uz = ux.cross(uy);

  RigidTransform t;
  t.rotation.row(0) = ux.transpose();
  t.rotation.row(1) = uy.transpose();
  t.rotation.row(2) = uz.transpose();
  t.translation = -(t.rotation * ground_point);
  return t;
}

PointCloud transform_cloud(const PointCloud& cloud, const RigidTransform& t) {
  PointCloud out;
  out.points.reserve(cloud.size());
  out.pixels = cloud.pixels;
  for (const auto& p : cloud.points) out.points.push_back(t.apply(p));
  return out;
}

RigidTransform update_extrinsics(const RigidTransform& camera_pose,
                                 const RigidTransform& alignment) {
  return camera_pose.compose(alignment.inverse());
}

std::vector<int> select_low_points(const PointCloud& cloud, const Eigen::Vector3d& up,
                                   double fraction) {
  if (cloud.size() == 0) throw InsufficientPoints("empty cloud");
  std::vector<int> idx(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return up.dot(cloud.points[a]) < up.dot(cloud.points[b]);
  });
  std::size_t keep = static_cast<std::size_t>(std::ceil(fraction * cloud.size()));
  if (keep < 3) keep = std::min<std::size_t>(3, cloud.size());
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Eigen::Vector3d inlier_centroid(const PointCloud& cloud, const std::vector<int>& idx) {
  if (idx.empty()) throw InsufficientPoints("no indices for centroid");
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (int i : idx) c += cloud.points[i];
  return c / static_cast<double>(idx.size());
}

RigidTransform planning_frame_rotation() {
  RigidTransform t;
  t.rotation << 0, 0, 1,  //
      1, 0, 0,            //
      0, 1, 0;
  return t;
}

}  // namespace coins
