#pragma once

#include <optional>
#include <string>

#include "geometry.hpp"
#include "perception.hpp"

namespace brickwork {

enum class BrickEnd { PlusX, MinusX };

/// Wall-edge alignment: the chosen end face of the brick must lie on
/// the reference vertical plane.
struct EdgeConstraint {
  Plane reference_plane;  // normal is horizontal
  BrickEnd brick_end = BrickEnd::MinusX;
};

/// Design-model placement of one brick. The nominal pose sits at the
/// brick top center with Z world-up (flat coursework).
struct PlacementPlan {
  std::string brick_id;
  Pose nominal_pose_world;
  int course_index = 0;
  double nominal_length = 0.0;  // design brick length, for the correction budget
  std::optional<EdgeConstraint> edge_constraint;
};

struct AdaptiveConfig {
  double adhesive_thickness = 0.0008;  // m
  double nominal_gap = 0.003;          // m, lateral gap budget between bricks
  Pose grasp_offset;                   // TCP grasping pose in the brick frame
};

/// Result of the lateral (in-plane) correction: a translation along the
/// brick's length axis, expressed in the nominal pose frame.
struct LateralCorrection {
  Pose delta;  // identity rotation, translation (shift, 0, 0)
  bool saturated = false;
  double requested_shift = 0.0;  // m, before clamping
};

/// Grasping frame from an observed brick pose: observed pose composed
/// with the fixed grasp offset.
Pose grasp_pose(const BrickObservation& obs, const AdaptiveConfig& cfg);

/// Adjusted placing height: measured course top + scanned brick height
/// + adhesive thickness. World z of the brick-top-center frame after
/// placement.
double placement_height(const CourseScan& course_scan, const BrickObservation& obs,
                        const AdaptiveConfig& cfg);

/// Shift along the brick length axis putting the constrained end face
/// (at +/- measured length / 2) onto the reference plane. Zero when the
/// plan has no edge constraint. The magnitude is clamped to the nominal
/// gap budget; exceeding it (or a measured-vs-nominal length deviation
/// beyond the budget) sets the saturated flag.
LateralCorrection lateral_correction(const PlacementPlan& plan, const BrickObservation& obs,
                                     const AdaptiveConfig& cfg);

struct CorrectedPlacement {
  Pose pose_world;       // nominal * delta_z * delta_xy
  double target_top_z = 0.0;  // placement_height output
  bool lateral_saturated = false;
};

/// Final corrected placement pose: the nominal pose composed with a
/// vertical correction (course-shared scan plus per-brick height) and
/// the brick-specific lateral correction.
CorrectedPlacement corrected_placement(const PlacementPlan& plan, const CourseScan& course_scan,
                                       const BrickObservation& obs, const AdaptiveConfig& cfg);

}  // namespace brickwork
