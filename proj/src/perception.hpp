#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"

namespace brickwork {

enum class ScanSource { BrickTopScan, CourseTopScan };

struct PointCloud {
  std::vector<Vec3> points;  // world frame, meters
  ScanSource source = ScanSource::BrickTopScan;
};

struct BrickDims {
  double length = 0.0;  // m, length >= width
  double width = 0.0;
  double height = 0.0;
};

/// Estimated brick state from a top-face scan. The pose origin is the
/// brick top center with Z up and X along the length direction.
struct BrickObservation {
  Pose pose_world;
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double residual_rms = 0.0;  // RMS z deviation of the scan about its mean
};

/// Per-course as-built summary from a top scan.
struct CourseScan {
  int course_index = 0;
  double mean_top_height = 0.0;  // m
  std::size_t sample_count = 0;
  double height_spread = 0.0;  // max z - min z
};

/// Raster scan of a brick's top face with a 1D height sensor: grid
/// points strictly on the true footprint, z = true top + Gaussian
/// noise. Throws EmptyScan when the pitch exceeds both footprint
/// dimensions.
PointCloud simulate_brick_scan(const Pose& true_pose, const BrickDims& true_dims,
                               double platform_top_z, double scan_pitch, double noise_sigma,
                               std::uint64_t seed);

/// Fits the cloud's plan-view footprint with a minimum-area rectangle
/// and reads pose and dimensions off it; height is mean top z minus the
/// known support surface height.
BrickObservation estimate_brick(const PointCloud& cloud, double support_top_z);

/// Mean/spread/count of the scanned heights of one course.
CourseScan summarize_course(const PointCloud& cloud, int course_index);

}  // namespace brickwork
