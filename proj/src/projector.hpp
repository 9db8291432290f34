#pragma once

#include <functional>
#include <vector>

#include "geometry.hpp"

namespace brickwork {

/// Reversed-pinhole projector: a fixed mount transform from the TCP
/// plus horizontal/vertical field-of-view angles.
struct ProjectorModel {
  Pose extrinsic;      // TCP -> projector
  double fov_x = 0.0;  // radians, in (0, pi)
  double fov_y = 0.0;

  void validate() const {
    if (!(fov_x > 0.0 && fov_x < M_PI && fov_y > 0.0 && fov_y < M_PI)) {
      throw Error(ErrorCode::ConfigError, "projector FOV angles must lie strictly inside (0, pi)");
    }
  }
};

/// Ordered 3D points in the world frame encoding one visual cue
/// (a brick footprint, fastener locations, ...).
struct SpatialCue {
  std::vector<Vec3> points;
  bool closed = false;
};

/// Normalized image-plane coordinates. (0,0) is top-left, (1,1)
/// bottom-right; in_frame is true iff (u,v) lies in the unit square.
struct ImagePoint {
  double u = 0.0;
  double v = 0.0;
  bool in_frame = false;
};

/// Forward pinhole map for a point already expressed in the projector
/// frame. Throws BehindProjector when Z <= 0.
ImagePoint project_point(const ProjectorModel& model, const Vec3& point_in_projector_frame);

/// Inverse of project_point at a given depth (used for synthesis and
/// round-trip checks).
Vec3 unproject_point(const ProjectorModel& model, double u, double v, double depth);

struct ProjectionPlanParams {
  double standoff = 0.8;               // m from the cue's bounding-box centroid
  Vec3 approach_dir = {0.0, 0.0, -1.0};  // unit vector from projector toward the cue
  Vec3 up_hint = {1.0, 0.0, 0.0};        // image x-axis hint in the world frame
};

/// Projector pose placed a fixed translation away from the cue's
/// bounding-box centroid with the optical (Z) axis directed at it.
Pose plan_projector_pose(const SpatialCue& cue, const ProjectionPlanParams& params);

/// TCP pose realizing a desired world projector pose:
/// world_T_tcp = world_T_proj * (tcp_T_proj)^-1.
Pose tcp_pose_for_projection(const ProjectorModel& model, const Pose& projector_pose_world);

/// Cue points mapped to image coordinates for a projector at the given
/// world pose, order preserved. BehindProjector errors carry the index
/// of the offending point.
std::vector<ImagePoint> render_cue(const ProjectorModel& model, const Pose& projector_pose_world,
                                   const SpatialCue& cue);

/// Hook for robot workspace checks when planning projector poses.
/// The default accepts every pose.
using ReachabilityPredicate = std::function<bool(const Pose&)>;
inline bool always_reachable(const Pose&) { return true; }

}  // namespace brickwork
