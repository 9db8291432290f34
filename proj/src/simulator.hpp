#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adaptive.hpp"
#include "geometry.hpp"
#include "perception.hpp"

namespace brickwork {

struct NominalBrick {
  double length = 0.2;
  double width = 0.1;
  double height = 0.065;
};

struct PickupConfig {
  double platform_top_z = 0.0;
  std::vector<Pose> queue_poses;  // cycled when shorter than the brick list
};

struct WallDesign {
  std::vector<PlacementPlan> bricks;  // ordered by course, then along the course
  NominalBrick nominal_brick;
  int courses = 0;
  std::map<std::string, Plane> reference_planes;
  PickupConfig pickup;
  double slab_top_z = 0.0;  // construction datum

  void validate() const;
};

struct DimSigma {
  double length = 0.0, width = 0.0, height = 0.0;
};
struct PickupSigma {
  double xy = 0.0, yaw = 0.0;
};
struct ActuationSigma {
  double xy = 0.0, z = 0.0, yaw = 0.0;
};

struct NoiseModel {
  DimSigma dim_sigma;
  PickupSigma pickup_pose_sigma;
  double scan_sigma = 0.0;
  ActuationSigma actuation_sigma;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Per-subprocess mean durations, seconds per brick. The defaults
/// reproduce a 123.1 s cycle split 42.6 / 20.3 / 15.9 / 14.2 / 7.0 %
/// across traversal, user wait, adhesive, data collection and scanning.
struct TimingModel {
  double traversal = 52.44;
  double user_wait = 24.99;
  double adhesive = 19.57;
  double data_collection = 17.48;
  double scanning = 8.62;
  double jitter_fraction = 0.0;

  void validate() const;
};

struct SettleParams {
  double collision_z_threshold = 0.002;  // tolerated interference before a collision
  double max_bond_gap = 0.003;           // largest gap the adhesive can fill
  double xy_overlap_threshold = 0.0005;  // in-course footprint interference
};

struct ScanConfig {
  double pitch = 0.01;          // raster pitch, m
  double coverage_fraction = 1.0;  // fraction of a course's bricks scanned
};

enum class BuildMode { OpenLoop, Adaptive };

enum class OutcomeKind { Completed, CollisionFailure, BondGapFailure };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Completed;
  std::string brick_id;  // offending brick for failures
};

struct PlacedBrick {
  std::string id;
  int course = 0;
  Pose true_pose;  // as-built, after settling
  BrickDims true_dims;
  Pose commanded_pose;        // corrected (adaptive) or nominal (open loop)
  double target_top_z = 0.0;  // updated target height this brick was placed against
  double settle_gap = 0.0;    // adhesive-filled bond gap
  std::vector<std::string> warnings;
};

struct Event {
  double t = 0.0;  // simulation time, s
  std::string kind;
  std::string brick_id;
  std::string detail;
};

struct BuildState {
  BuildMode mode = BuildMode::Adaptive;
  std::uint64_t seed = 0;
  Outcome outcome;
  std::vector<PlacedBrick> placed;
  std::vector<CourseScan> course_scans;  // scan k supports course k
  std::vector<Event> events;
  std::map<std::string, double> timing_totals_s;  // per subprocess
  std::size_t design_brick_count = 0;
};

struct SettleResult {
  Pose final_pose;
  double settle_gap = 0.0;
  std::optional<Outcome> failure;
};

/// Plan-view footprint of a brick at a Z-up pose.
OrientedRect2 brick_footprint(const Pose& pose, double length, double width);

/// Vertical seating model: the commanded bottom is compared against the
/// highest support under the footprint. Small interference rides on the
/// support, large interference is a collision, and gaps beyond what the
/// adhesive fills are bond-gap failures.
SettleResult settle(const Pose& commanded_pose, const BrickDims& dims,
                    std::span<const PlacedBrick> supports, double slab_top_z,
                    const SettleParams& params, const std::string& brick_id);

/// In-course lateral interference check; returns the id of the first
/// placed brick whose footprint overlaps deeper than the threshold.
std::optional<std::string> check_collisions(const OrientedRect2& footprint,
                                            std::span<const PlacedBrick> same_course,
                                            double xy_overlap_threshold);

struct SimulationConfig {
  WallDesign design;
  NoiseModel noise;
  TimingModel timing;
  AdaptiveConfig adaptive;
  SettleParams settle;
  ScanConfig scan;
};

/// Executes one full build, open-loop or adaptive. Deterministic for a
/// given master seed.
BuildState run_build(const SimulationConfig& config, BuildMode mode);

/// Per-course mean absolute error of as-built brick top heights against
/// each brick's updated target height. Courses with no placed bricks
/// yield NaN.
std::vector<double> course_mae(const BuildState& state, const WallDesign& design);

struct TimingReport {
  std::vector<std::pair<std::string, double>> totals_s;  // per subprocess
  std::vector<std::pair<std::string, double>> shares;    // fraction of total, 0 when empty
  double total_s = 0.0;
  double per_brick_mean_s = 0.0;
  std::size_t bricks = 0;
};

TimingReport timing_report(const BuildState& state);

const char* build_mode_name(BuildMode mode);
const char* outcome_kind_name(OutcomeKind kind);

}  // namespace brickwork
