#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "projector.hpp"

namespace brickwork {

/// Image-frame corner labels. TL is (u,v)=(0,0), TR (1,0), BR (1,1),
/// BL (0,1), matching the bound conventions of the projection map.
enum class Corner : int { TL = 0, TR = 1, BR = 2, BL = 3 };
constexpr std::array<Corner, 4> kCorners = {Corner::TL, Corner::TR, Corner::BR, Corner::BL};
const char* corner_name(Corner c);

/// One full-frame projection: the recorded TCP pose and the four probed
/// corner locations, all in the world frame.
struct CalibrationShot {
  Pose tcp_pose_world;
  std::array<Vec3, 4> corners_world;  // indexed by Corner
};

struct CalibrationSession {
  std::vector<CalibrationShot> shots;
};

enum class ConditionFlag { WellConditioned, NearParallel };

struct CalibrationResult {
  ProjectorModel model;
  std::array<double, 4> per_line_rms_residual{};  // m, indexed by Corner
  double apex_objective = 0.0;                    // m^2, objective value at the optimum
  ConditionFlag condition_flag = ConditionFlag::WellConditioned;
  bool direction_ambiguous = false;  // any corner line with a degenerate PCA spectrum
};

/// Probed corners mapped into the TCP frame of their own shot,
/// grouped per corner label (shot order preserved).
std::array<std::vector<Vec3>, 4> corners_to_tcp_frame(const CalibrationSession& session);

/// Recovers the projector mount transform and FOV from a session:
/// fits one 3D line per corner label in the TCP frame, intersects them
/// for the optical center, averages directions for the optical axis and
/// image axes, and reads the FOV off the reconstructed viewing cone.
CalibrationResult calibrate(const CalibrationSession& session);

/// Synthesizes a session from a known model by intersecting the four
/// frame-corner rays with a plane, plus isotropic probe noise.
/// The test oracle for calibrate().
CalibrationSession synthesize_session(const ProjectorModel& model, const std::vector<Pose>& tcp_poses,
                                      const Plane& surface, double probe_noise_sigma,
                                      std::uint64_t seed);

/// Unit direction of the viewing-cone edge for a corner, expressed in
/// the projector frame.
Vec3 corner_ray_direction(const ProjectorModel& model, Corner corner);

}  // namespace brickwork
