#include "adaptive.hpp"

#include <algorithm>
#include <cmath>

namespace brickwork {

Pose grasp_pose(const BrickObservation& obs, const AdaptiveConfig& cfg) {
  return compose(obs.pose_world, cfg.grasp_offset);
}

double placement_height(const CourseScan& course_scan, const BrickObservation& obs,
                        const AdaptiveConfig& cfg) {
  return course_scan.mean_top_height + obs.height + cfg.adhesive_thickness;
}

LateralCorrection lateral_correction(const PlacementPlan& plan, const BrickObservation& obs,
                                     const AdaptiveConfig& cfg) {
  LateralCorrection out;
  out.delta = Pose::identity();
  if (!plan.edge_constraint) {
    return out;
  }
  const EdgeConstraint& ec = *plan.edge_constraint;
  const Vec3 n = ec.reference_plane.normal.normalized();
  const Vec3 length_axis = plan.nominal_pose_world.x_axis();
  const double align = length_axis.dot(n);
  if (std::abs(align) < 1e-9) {
    throw Error(ErrorCode::DegenerateInput,
                "edge constraint plane is parallel to the brick length axis");
  }

  const double end_sign = ec.brick_end == BrickEnd::PlusX ? +1.0 : -1.0;
  const Vec3 end_face = plan.nominal_pose_world.translation +
                        end_sign * 0.5 * obs.length * length_axis;
  const double gap_to_plane = ec.reference_plane.signed_distance(end_face);
  out.requested_shift = -gap_to_plane / align;

  double shift = out.requested_shift;
  if (std::abs(shift) > cfg.nominal_gap) {
    shift = std::clamp(shift, -cfg.nominal_gap, cfg.nominal_gap);
    out.saturated = true;
  }
  // A measured length outside the gap budget exhausts the correction
  // allowance even when the shift itself still fits.
  if (plan.nominal_length > 0.0 &&
      std::abs(obs.length - plan.nominal_length) > cfg.nominal_gap + 1e-12) {
    out.saturated = true;
  }
  out.delta = Pose::from_translation(Vec3(shift, 0.0, 0.0));
  return out;
}

CorrectedPlacement corrected_placement(const PlacementPlan& plan, const CourseScan& course_scan,
                                       const BrickObservation& obs, const AdaptiveConfig& cfg) {
  CorrectedPlacement out;
  out.target_top_z = placement_height(course_scan, obs, cfg);

  // Vertical correction in the pose frame. The nominal pose is Z-up, so
  // a local z translation moves world z exactly to the target height.
  const double dz = out.target_top_z - plan.nominal_pose_world.translation.z();
  const Pose delta_z = Pose::from_translation(Vec3(0.0, 0.0, dz));

  const LateralCorrection lat = lateral_correction(plan, obs, cfg);
  out.lateral_saturated = lat.saturated;
  out.pose_world = compose(compose(plan.nominal_pose_world, delta_z), lat.delta);
  return out;
}

}  // namespace brickwork
