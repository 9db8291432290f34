#include "projector.hpp"

#include <cmath>
#include <limits>

namespace brickwork {

ImagePoint project_point(const ProjectorModel& model, const Vec3& p) {
  model.validate();
  if (!(p.z() > 0.0)) {
    throw Error(ErrorCode::BehindProjector, "point not in front of the projector (Z <= 0)");
  }
  ImagePoint out;
  out.u = 0.5 * (1.0 + p.x() / (p.z() * std::tan(0.5 * model.fov_x)));
  out.v = 0.5 * (1.0 + p.y() / (p.z() * std::tan(0.5 * model.fov_y)));
  out.in_frame = out.u >= 0.0 && out.u <= 1.0 && out.v >= 0.0 && out.v <= 1.0;
  return out;
}

Vec3 unproject_point(const ProjectorModel& model, double u, double v, double depth) {
  model.validate();
  if (!(depth > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "unprojection depth must be positive");
  }
  return {(2.0 * u - 1.0) * depth * std::tan(0.5 * model.fov_x),
          (2.0 * v - 1.0) * depth * std::tan(0.5 * model.fov_y), depth};
}

Pose plan_projector_pose(const SpatialCue& cue, const ProjectionPlanParams& params) {
  if (cue.points.empty()) {
    throw Error(ErrorCode::DegenerateInput, "empty spatial cue");
  }
  if (!(params.standoff > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "standoff must be positive");
  }
  const double an = params.approach_dir.norm();
  if (!(an > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "zero approach direction");
  }
  const Vec3 approach = params.approach_dir / an;

  Vec3 lo = cue.points.front(), hi = cue.points.front();
  for (const Vec3& p : cue.points) {
    if (!p.allFinite()) {
      throw Error(ErrorCode::DegenerateInput, "cue point is not finite");
    }
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec3 centroid = 0.5 * (lo + hi);

  Pose pose;
  pose.translation = centroid - params.standoff * approach;
  pose.rotation = orthonormalize_frame(approach, params.up_hint);
  return pose;
}

Pose tcp_pose_for_projection(const ProjectorModel& model, const Pose& projector_pose_world) {
  return compose(projector_pose_world, invert(model.extrinsic));
}

std::vector<ImagePoint> render_cue(const ProjectorModel& model, const Pose& projector_pose_world,
                                   const SpatialCue& cue) {
  const Pose world_to_proj = invert(projector_pose_world);
  std::vector<ImagePoint> out;
  out.reserve(cue.points.size());
  for (size_t i = 0; i < cue.points.size(); ++i) {
    const Vec3 local = world_to_proj.apply(cue.points[i]);
    if (!(local.z() > 0.0)) {
      throw Error(ErrorCode::BehindProjector, "cue point " + std::to_string(i) + " behind projector",
                  static_cast<long>(i));
    }
    out.push_back(project_point(model, local));
  }
  return out;
}

}  // namespace brickwork
