#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "coins/geometry.hpp"
#include "coins/rng.hpp"
#include "doctest.h"

using namespace coins;

namespace {

DepthImage depth_from(std::initializer_list<float> vals, int w, int h,
                      DepthUnits u = DepthUnits::relative) {
  DepthImage d = DepthImage::create(w, h, u);
  int i = 0;
  for (float v : vals) {
    d.values[i] = v;
    d.valid[i] = 1;
    ++i;
  }
  return d;
}

RigidTransform random_transform(Rng& rng) {
  const Eigen::Vector3d axis =
      Eigen::Vector3d(rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1)).normalized();
  RigidTransform t;
  t.rotation = Eigen::AngleAxisd(rng.uniform(-3.0, 3.0), axis).toRotationMatrix();
  t.translation = Eigen::Vector3d(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
  return t;
}

PointCloud random_cloud(Rng& rng, int n) {
  PointCloud c;
  for (int i = 0; i < n; ++i)
    c.points.emplace_back(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
  return c;
}

}  // namespace

TEST_CASE("align_depth_scale: constant ratio and identity") {
  CHECK(align_depth_scale(depth_from({1, 2, 3}, 3, 1),
                          depth_from({2, 4, 6}, 3, 1, DepthUnits::meters)) == 2.0);
  CHECK(align_depth_scale(depth_from({1, 1, 1}, 3, 1),
                          depth_from({1, 1, 1}, 3, 1, DepthUnits::meters)) == 1.0);
}

TEST_CASE("align_depth_scale: median beats an outlier") {
  // ratios {2, 2, 33.33...}; sorted by hand, the median is 2
  const double s = align_depth_scale(depth_from({2, 4, 3}, 3, 1),
                                     depth_from({4, 8, 100}, 3, 1, DepthUnits::meters));
  CHECK(s == 2.0);
}

TEST_CASE("align_depth_scale: even cardinality takes the middle mean") {
  const double s = align_depth_scale(depth_from({1, 1, 1, 1}, 4, 1),
                                     depth_from({1, 2, 3, 4}, 4, 1, DepthUnits::meters));
  CHECK(s == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("align_depth_scale: error paths") {
  DepthImage rel = depth_from({1, 2}, 2, 1);
  DepthImage met = depth_from({1, 2}, 2, 1, DepthUnits::meters);
  rel.valid = {1, 0};
  met.valid = {0, 1};
  CHECK_THROWS_AS(align_depth_scale(rel, met), EmptyIntersection);

  DepthImage bad = depth_from({0, 2}, 2, 1);
  CHECK_THROWS_AS(align_depth_scale(bad, depth_from({1, 2}, 2, 1, DepthUnits::meters)),
                  NonPositiveDepth);
}

TEST_CASE("align_depth_scale: permutation invariance and one-sided corruption") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 9 + rng.below_int(30);
    const double truth = rng.uniform(0.5, 4.0);
    DepthImage rel = DepthImage::create(n, 1, DepthUnits::relative);
    DepthImage met = DepthImage::create(n, 1, DepthUnits::meters);
    for (int i = 0; i < n; ++i) {
      const float r = static_cast<float>(rng.uniform(0.5, 5.0));
      rel.set(i, 0, r);
      // strictly under half the pixels corrupted, always upward
      const bool corrupt = i < (n - 1) / 2 && rng.bernoulli(0.8);
      met.set(i, 0, static_cast<float>(truth * r * (corrupt ? rng.uniform(3.0, 20.0) : 1.0)));
    }
    const double s = align_depth_scale(rel, met);
    CHECK(s == doctest::Approx(truth).epsilon(1e-5));

    // permuting pixels leaves the median unchanged
    DepthImage rel_p = DepthImage::create(n, 1, DepthUnits::relative);
    DepthImage met_p = DepthImage::create(n, 1, DepthUnits::meters);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    for (int i = 0; i < n; ++i) {
      rel_p.set(i, 0, rel.at(perm[i], 0));
      met_p.set(i, 0, met.at(perm[i], 0));
    }
    CHECK(align_depth_scale(rel_p, met_p) == s);
  }
}

TEST_CASE("rectify_depth: scaling and identity") {
  DepthImage rel = depth_from({3}, 1, 1);
  CHECK(rectify_depth(rel, 2.0).at(0, 0) == doctest::Approx(6.0));

  DepthImage same = rectify_depth(rel, 1.0);
  CHECK(same.values == rel.values);
  CHECK(same.valid == rel.valid);
  CHECK_THROWS_AS(rectify_depth(rel, 0.0), Error);
}

TEST_CASE("rectify_depth: recovers a known-scale ramp") {
  Rng rng(3);
  const int w = 16, h = 8;
  const double truth = 2.75;
  DepthImage rel = DepthImage::create(w, h, DepthUnits::relative);
  DepthImage met = DepthImage::create(w, h, DepthUnits::meters);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const float r = static_cast<float>(0.5 + 0.1 * u + 0.05 * v);
      rel.set(u, v, r);
      met.set(u, v, static_cast<float>(truth * r));
    }
  }
  const double s = align_depth_scale(rel, met);
  const DepthImage z = rectify_depth(rel, s);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      CHECK(std::abs(z.at(u, v) - truth * rel.at(u, v)) <= 1e-6);
    }
  }
  (void)rng;
}

TEST_CASE("backproject: principal point and unit offset") {
  Intrinsics k{100.0, 100.0, 4.0, 4.0, 9, 9};
  DepthImage d = DepthImage::create(9, 9, DepthUnits::meters);
  d.set(4, 4, 2.0f);
  PointCloud c = backproject(d, k);
  REQUIRE(c.size() == 1);
  CHECK(c.points[0].isApprox(Eigen::Vector3d(0, 0, 2), 1e-12));
  CHECK(c.pixels[0].u == 4);
  CHECK(c.pixels[0].v == 4);

  Intrinsics k2{2.0, 2.0, 1.0, 1.0, 4, 4};
  DepthImage d2 = DepthImage::create(4, 4, DepthUnits::meters);
  d2.set(3, 1, 1.0f);  // u = cx + fx, v = cy
  PointCloud c2 = backproject(d2, k2);
  REQUIRE(c2.size() == 1);
  CHECK(c2.points[0].isApprox(Eigen::Vector3d(1, 0, 1), 1e-12));
}

TEST_CASE("backproject: pinhole round trip on a random image") {
  Rng rng(11);
  Intrinsics k{57.0, 63.0, 3.5, 4.5, 8, 8};
  DepthImage d = DepthImage::create(8, 8, DepthUnits::meters);
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u)
      if (rng.bernoulli(0.8)) d.set(u, v, static_cast<float>(rng.uniform(0.2, 5.0)));

  const PointCloud c = backproject(d, k);
  std::size_t valid_count = 0;
  for (const auto& x : d.valid) valid_count += x;
  CHECK(c.size() == valid_count);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.points[i];
    const double u = k.fx * p.x() / p.z() + k.cx;
    const double v = k.fy * p.y() / p.z() + k.cy;
    CHECK(std::abs(u - c.pixels[i].u) <= 1e-9);
    CHECK(std::abs(v - c.pixels[i].v) <= 1e-9);
    CHECK(std::abs(p.z() - d.at(c.pixels[i].u, c.pixels[i].v)) <= 1e-9);
  }

  DepthImage wrong = DepthImage::create(4, 4, DepthUnits::meters);
  CHECK_THROWS_AS(backproject(wrong, k), DimensionMismatch);
}

TEST_CASE("fit_ground_plane: noise-free plane and minimal sample") {
  PointCloud cloud;
  Rng rng(5);
  std::vector<int> idx;
  for (int i = 0; i < 100; ++i) {
    cloud.points.emplace_back(rng.uniform(-2, 2), 0.0, rng.uniform(-2, 2));
    idx.push_back(i);
  }
  const PlaneModel m = fit_ground_plane(cloud, idx);
  CHECK(m.normal.isApprox(Eigen::Vector3d(0, 1, 0), 1e-9));
  CHECK(std::abs(m.d) <= 1e-9);
  CHECK(m.inliers.size() == 100);

  PointCloud tri;
  tri.points = {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}};
  const PlaneModel t = fit_ground_plane(tri, {0, 1, 2});
  CHECK(t.inliers.size() == 3);
  for (const auto& p : tri.points) CHECK(std::abs(t.signed_distance(p)) <= 1e-12);
}

TEST_CASE("fit_ground_plane: tilted plane with outliers") {
  Rng rng(17);
  const double tilt = 10.0 * std::numbers::pi / 180.0;
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(tilt, Eigen::Vector3d::UnitX()).toRotationMatrix();
  const Eigen::Vector3d true_normal = rot * Eigen::Vector3d(0, 1, 0);

  PointCloud cloud;
  std::vector<int> idx;
  for (int i = 0; i < 300; ++i) {
    Eigen::Vector3d p(rng.uniform(-2, 2), 0.0, rng.uniform(-2, 2));
    p = rot * p;
    if (i % 5 == 0) p += Eigen::Vector3d(0, rng.uniform(0.1, 1.0), 0);  // 20% outliers
    cloud.points.push_back(p);
    idx.push_back(i);
  }
  RansacParams params;
  params.inlier_tol = 0.01;
  params.seed = 9;
  const PlaneModel m = fit_ground_plane(cloud, idx, params);
  const double angle = std::acos(std::clamp(m.normal.dot(true_normal), -1.0, 1.0));
  CHECK(angle <= 1.0 * std::numbers::pi / 180.0);
}

TEST_CASE("fit_ground_plane: error paths and tolerance monotonicity") {
  PointCloud line;
  for (int i = 0; i < 10; ++i) line.points.emplace_back(i, 2.0 * i, 3.0 * i);
  std::vector<int> idx;
  for (int i = 0; i < 10; ++i) idx.push_back(i);
  CHECK_THROWS_AS(fit_ground_plane(line, idx), DegenerateInput);
  CHECK_THROWS_AS(fit_ground_plane(line, {0, 1}), InsufficientPoints);

  Rng rng(23);
  PointCloud cloud;
  std::vector<int> all;
  for (int i = 0; i < 120; ++i) {
    cloud.points.emplace_back(rng.uniform(-1, 1), rng.normal(0, 0.05), rng.uniform(-1, 1));
    all.push_back(i);
  }
  std::size_t prev = 0;
  for (double tol : {0.01, 0.03, 0.06, 0.12}) {
    RansacParams params;
    params.inlier_tol = tol;
    params.seed = 4;
    const PlaneModel m = fit_ground_plane(cloud, all, params);
    CHECK(m.inliers.size() >= prev);
    prev = m.inliers.size();
    for (int i : m.inliers)
      CHECK(std::abs(m.signed_distance(cloud.points[i])) <= tol);
  }
}

TEST_CASE("build_canonical_transform: identity, shift, and tilt correction") {
  PlaneModel flat;
  flat.normal = Eigen::Vector3d(0, 1, 0);
  flat.d = 0;

  const RigidTransform id =
      build_canonical_transform(flat, Eigen::Vector3d(0, 0, 1), Eigen::Vector3d::Zero());
  CHECK(id.rotation.isApprox(Eigen::Matrix3d::Identity(), 1e-12));
  CHECK(id.translation.isApprox(Eigen::Vector3d::Zero(), 1e-12));

  const RigidTransform shift =
      build_canonical_transform(flat, Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 2));
  CHECK(shift.rotation.isApprox(Eigen::Matrix3d::Identity(), 1e-12));
  CHECK(shift.translation.isApprox(Eigen::Vector3d(-1, 0, -2), 1e-12));

  CHECK_THROWS_AS(
      build_canonical_transform(flat, Eigen::Vector3d(0, 1, 0), Eigen::Vector3d::Zero()),
      ParallelAxes);

  // tilted ground comes back to y == 0
  Rng rng(31);
  const double tilt = 15.0 * std::numbers::pi / 180.0;
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(tilt, Eigen::Vector3d::UnitX()).toRotationMatrix();
  PointCloud ground;
  std::vector<int> idx;
  for (int i = 0; i < 200; ++i) {
    ground.points.push_back(rot * Eigen::Vector3d(rng.uniform(-2, 2), 0, rng.uniform(-2, 2)));
    idx.push_back(i);
  }
  const PlaneModel m = fit_ground_plane(ground, idx);
  const RigidTransform t =
      build_canonical_transform(m, Eigen::Vector3d(0, 0, 1), inlier_centroid(ground, m.inliers));
  const PointCloud canonical = transform_cloud(ground, t);
  for (const auto& p : canonical.points) CHECK(std::abs(p.y()) <= 1e-9);
  CHECK(t.is_rigid(1e-9));
}

TEST_CASE("canonicalization: inliers end within tolerance of zero height") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const double tilt = rng.uniform(-0.3, 0.3);
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(tilt, Eigen::Vector3d::UnitX()).toRotationMatrix();
    PointCloud cloud;
    std::vector<int> idx;
    const double tol = 0.02;
    for (int i = 0; i < 150; ++i) {
      Eigen::Vector3d p(rng.uniform(-2, 2), rng.normal(0, 0.005), rng.uniform(-2, 2));
      cloud.points.push_back(rot * p);
      idx.push_back(i);
    }
    RansacParams params;
    params.seed = trial;
    params.inlier_tol = tol;
    const PlaneModel m = fit_ground_plane(cloud, idx, params);
    const RigidTransform t = build_canonical_transform(m, Eigen::Vector3d(0, 0, 1),
                                                       inlier_centroid(cloud, m.inliers));
    const PointCloud canonical = transform_cloud(cloud, t);
    for (int i : m.inliers) CHECK(std::abs(canonical.points[i].y()) <= tol + 1e-9);
  }
}

TEST_CASE("transform_cloud: identity, translation, isometry") {
  PointCloud c;
  c.points = {{0, 0, 0}, {1, 2, 3}};
  c.pixels = {{1, 2}, {3, 4}};

  const PointCloud same = transform_cloud(c, RigidTransform::identity());
  CHECK(same.points[0] == c.points[0]);
  CHECK(same.points[1] == c.points[1]);
  CHECK(same.pixels[1].u == 3);

  RigidTransform shift;
  shift.translation = Eigen::Vector3d(1, 0, 0);
  CHECK(transform_cloud(c, shift).points[0].isApprox(Eigen::Vector3d(1, 0, 0), 1e-15));

  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const RigidTransform t = random_transform(rng);
    const PointCloud cloud = random_cloud(rng, 20);
    const PointCloud moved = transform_cloud(cloud, t);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (std::size_t j = i + 1; j < cloud.size(); ++j) {
        const double before = (cloud.points[i] - cloud.points[j]).norm();
        const double after = (moved.points[i] - moved.points[j]).norm();
        CHECK(std::abs(before - after) <= 1e-9);
      }
    }
  }
}

TEST_CASE("rigid transforms stay orthonormal through composition and inversion") {
  Rng rng(43);
  RigidTransform acc = RigidTransform::identity();
  for (int i = 0; i < 40; ++i) {
    acc = acc.compose(random_transform(rng));
    if (i % 3 == 0) acc = acc.inverse();
    CHECK(acc.is_rigid(1e-9));
  }
}

TEST_CASE("update_extrinsics: identities and algebraic round trip") {
  Rng rng(47);
  const RigidTransform pose = random_transform(rng);
  const RigidTransform same = update_extrinsics(pose, RigidTransform::identity());
  CHECK(same.rotation.isApprox(pose.rotation, 1e-12));
  CHECK(same.translation.isApprox(pose.translation, 1e-12));

  const RigidTransform self = update_extrinsics(pose, pose);
  CHECK(self.rotation.isApprox(Eigen::Matrix3d::Identity(), 1e-9));
  CHECK(self.translation.norm() <= 1e-9);

  for (int trial = 0; trial < 20; ++trial) {
    const RigidTransform t = random_transform(rng);
    const RigidTransform align = random_transform(rng);
    const RigidTransform t_new = update_extrinsics(t, align);
    const RigidTransform back = t_new.compose(align);
    CHECK((back.rotation - t.rotation).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((back.translation - t.translation).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("select_low_points picks the bottom fraction along up") {
  PointCloud c;
  for (int i = 0; i < 10; ++i) c.points.emplace_back(0.0, static_cast<double>(i), 0.0);
  const auto idx = select_low_points(c, Eigen::Vector3d(0, 1, 0), 0.3);
  CHECK(idx == std::vector<int>{0, 1, 2});
  // camera-frame up (-y): the "lowest" points are the largest y
  const auto idx_cam = select_low_points(c, Eigen::Vector3d(0, -1, 0), 0.3);
  CHECK(idx_cam == std::vector<int>{7, 8, 9});
}

TEST_CASE("planning_frame_rotation relabels axes with det +1") {
  const RigidTransform t = planning_frame_rotation();
  CHECK(t.is_rigid(1e-12));
  // canonical (x right, y up, z forward) -> planning (x=fwd, y=right, z=up)
  CHECK(t.apply(Eigen::Vector3d(0, 0, 1)).isApprox(Eigen::Vector3d(1, 0, 0), 1e-15));
  CHECK(t.apply(Eigen::Vector3d(1, 0, 0)).isApprox(Eigen::Vector3d(0, 1, 0), 1e-15));
  CHECK(t.apply(Eigen::Vector3d(0, 1, 0)).isApprox(Eigen::Vector3d(0, 0, 1), 1e-15));
}
