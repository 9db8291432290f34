#include "perception.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace brickwork {

namespace {

// Symmetric grid including both face edges, spacing <= pitch.
std::vector<double> grid_coords(double extent, double pitch) {
  const int n = std::max(2, static_cast<int>(std::ceil(extent / pitch - 1e-12)) + 1);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = -0.5 * extent + extent * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

PointCloud simulate_brick_scan(const Pose& true_pose, const BrickDims& true_dims,
                               double platform_top_z, double scan_pitch, double noise_sigma,
                               std::uint64_t seed) {
  if (!(scan_pitch > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "scan pitch must be positive");
  }
  if (noise_sigma < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  }
  if (scan_pitch > true_dims.length && scan_pitch > true_dims.width) {
    throw Error(ErrorCode::EmptyScan, "scan pitch exceeds both brick dimensions");
  }
  if (true_pose.translation.z() <= platform_top_z) {
    throw Error(ErrorCode::ConfigError, "brick top is not above its support surface");
  }

  Rng rng(derive_seed(seed, {0xb51c}));
  PointCloud cloud;
  cloud.source = ScanSource::BrickTopScan;
  const auto xs = grid_coords(true_dims.length, scan_pitch);
  const auto ys = grid_coords(true_dims.width, scan_pitch);
  cloud.points.reserve(xs.size() * ys.size());
  for (double x : xs) {
    for (double y : ys) {
      Vec3 p = true_pose.apply(Vec3(x, y, 0.0));
      if (noise_sigma > 0.0) p.z() += rng.normal(0.0, noise_sigma);
      cloud.points.push_back(p);
    }
  }
  return cloud;
}

BrickObservation estimate_brick(const PointCloud& cloud, double support_top_z) {
  if (cloud.points.size() < 3) {
    throw Error(ErrorCode::DegenerateInput, "brick estimation needs at least 3 points");
  }
  std::vector<Vec2> xy;
  xy.reserve(cloud.points.size());
  double mean_z = 0.0;
  for (const Vec3& p : cloud.points) {
    xy.emplace_back(p.x(), p.y());
    mean_z += p.z();
  }
  mean_z /= static_cast<double>(cloud.points.size());

  const OrientedRect2 rect = min_area_rect(xy);

  if (!(mean_z > support_top_z)) {
    throw Error(ErrorCode::NegativeHeight, "scanned top surface at or below the support surface");
  }

  double sq = 0.0;
  for (const Vec3& p : cloud.points) {
    sq += (p.z() - mean_z) * (p.z() - mean_z);
  }

  BrickObservation obs;
  obs.pose_world = Pose::from_yaw(rect.yaw, Vec3(rect.center.x(), rect.center.y(), mean_z));
  obs.length = 2.0 * rect.half_extents.x();
  obs.width = 2.0 * rect.half_extents.y();
  obs.height = mean_z - support_top_z;
  obs.residual_rms = std::sqrt(sq / static_cast<double>(cloud.points.size()));
  return obs;
}

CourseScan summarize_course(const PointCloud& cloud, int course_index) {
  if (cloud.points.empty()) {
    throw Error(ErrorCode::EmptyScan, "course scan has no points");
  }
  CourseScan scan;
  scan.course_index = course_index;
  scan.sample_count = cloud.points.size();
  double sum = 0.0;
  double lo = cloud.points.front().z(), hi = lo;
  for (const Vec3& p : cloud.points) {
    sum += p.z();
    lo = std::min(lo, p.z());
    hi = std::max(hi, p.z());
  }
  scan.mean_top_height = sum / static_cast<double>(cloud.points.size());
  scan.height_spread = hi - lo;
  return scan;
}

}  // namespace brickwork
