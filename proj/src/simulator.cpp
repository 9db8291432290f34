#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace brickwork {

namespace {

// Stream ids for per-brick / per-course random substreams.
enum StreamId : std::uint64_t {
  kDims = 1,
  kPickup = 2,
  kBrickScan = 3,
  kActuation = 4,
  kTiming = 5,
  kCourseScan = 6,
};

double pose_yaw(const Pose& p) { return std::atan2(p.rotation(1, 0), p.rotation(0, 0)); }

}  // namespace

const char* build_mode_name(BuildMode mode) {
  return mode == BuildMode::OpenLoop ? "open_loop" : "adaptive";
}

const char* outcome_kind_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Completed: return "completed";
    case OutcomeKind::CollisionFailure: return "collision_failure";
    case OutcomeKind::BondGapFailure: return "bond_gap_failure";
  }
  return "?";
}

void WallDesign::validate() const {
  if (bricks.empty()) throw Error(ErrorCode::ConfigError, "wall design has no bricks");
  if (!(nominal_brick.length >= nominal_brick.width && nominal_brick.width > 0.0 &&
        nominal_brick.height > 0.0)) {
    throw Error(ErrorCode::ConfigError, "nominal brick dimensions must satisfy length >= width > 0");
  }
  if (pickup.queue_poses.empty()) {
    throw Error(ErrorCode::ConfigError, "pickup configuration needs at least one queue pose");
  }
  int prev = -1;
  for (const PlacementPlan& plan : bricks) {
    if (plan.course_index < 0 || plan.course_index > prev + 1) {
      throw Error(ErrorCode::ConfigError,
                  "brick '" + plan.brick_id + "': course indices must be contiguous from 0");
    }
    prev = std::max(prev, plan.course_index);
    const Vec3 z = plan.nominal_pose_world.z_axis();
    if ((z - Vec3::UnitZ()).norm() > 1e-9) {
      throw Error(ErrorCode::ConfigError,
                  "brick '" + plan.brick_id + "': nominal pose Z axis must be world-up");
    }
    if (plan.edge_constraint &&
        std::abs(plan.edge_constraint->reference_plane.normal.normalized().z()) > 1e-9) {
      throw Error(ErrorCode::ConfigError,
                  "brick '" + plan.brick_id + "': edge constraint normal must be horizontal");
    }
  }
  if (prev + 1 != courses) {
    throw Error(ErrorCode::ConfigError, "course count does not match the brick list");
  }
}

void NoiseModel::validate() const {
  const double sigmas[] = {dim_sigma.length, dim_sigma.width,       dim_sigma.height,
                           pickup_pose_sigma.xy, pickup_pose_sigma.yaw, scan_sigma,
                           actuation_sigma.xy,  actuation_sigma.z,   actuation_sigma.yaw};
  for (double s : sigmas) {
    if (s < 0.0) throw Error(ErrorCode::ConfigError, "noise sigmas must be non-negative");
  }
}

void TimingModel::validate() const {
  const double vals[] = {traversal, user_wait, adhesive, data_collection, scanning, jitter_fraction};
  for (double v : vals) {
    if (v < 0.0) throw Error(ErrorCode::ConfigError, "timing durations must be non-negative");
  }
}

OrientedRect2 brick_footprint(const Pose& pose, double length, double width) {
  OrientedRect2 rect;
  rect.center = {pose.translation.x(), pose.translation.y()};
  rect.half_extents = {0.5 * std::max(length, width), 0.5 * std::min(length, width)};
  rect.yaw = pose_yaw(pose);
  while (rect.yaw < -M_PI / 2) rect.yaw += M_PI;
  while (rect.yaw >= M_PI / 2) rect.yaw -= M_PI;
  return rect;
}

SettleResult settle(const Pose& commanded_pose, const BrickDims& dims,
                    std::span<const PlacedBrick> supports, double slab_top_z,
                    const SettleParams& params, const std::string& brick_id) {
  const OrientedRect2 footprint = brick_footprint(commanded_pose, dims.length, dims.width);
  double support_top = slab_top_z;
  for (const PlacedBrick& s : supports) {
    const OrientedRect2 sf = brick_footprint(s.true_pose, s.true_dims.length, s.true_dims.width);
    if (rect_overlap_depth(footprint, sf) > 0.0) {
      support_top = std::max(support_top, s.true_pose.translation.z());
    }
  }

  SettleResult result;
  result.final_pose = commanded_pose;
  const double commanded_bottom = commanded_pose.translation.z() - dims.height;
  const double gap = commanded_bottom - support_top;
  if (gap < -params.collision_z_threshold) {
    result.failure = Outcome{OutcomeKind::CollisionFailure, brick_id};
    result.settle_gap = gap;
  } else if (gap < 0.0) {
    // Rests on the support, riding high by the interference.
    result.final_pose.translation.z() = support_top + dims.height;
    result.settle_gap = 0.0;
  } else if (gap <= params.max_bond_gap) {
    result.settle_gap = gap;  // adhesive fills
  } else {
    result.failure = Outcome{OutcomeKind::BondGapFailure, brick_id};
    result.settle_gap = gap;
  }
  return result;
}

std::optional<std::string> check_collisions(const OrientedRect2& footprint,
                                            std::span<const PlacedBrick> same_course,
                                            double xy_overlap_threshold) {
  for (const PlacedBrick& b : same_course) {
    const OrientedRect2 bf = brick_footprint(b.true_pose, b.true_dims.length, b.true_dims.width);
    if (rect_overlap_depth(footprint, bf) > xy_overlap_threshold) {
      return b.id;
    }
  }
  return std::nullopt;
}

namespace {

struct BuildContext {
  const SimulationConfig& cfg;
  BuildMode mode;
  BuildState& state;
  double t = 0.0;

  void event(const std::string& kind, const std::string& brick = "", const std::string& detail = "") {
    state.events.push_back({t, kind, brick, detail});
  }

  void spend(const char* phase, double mean, Rng& rng, bool lognormal) {
    double dt = mean;
    if (cfg.timing.jitter_fraction > 0.0 && mean > 0.0 && lognormal) {
      dt = rng.lognormal_mean_cv(mean, cfg.timing.jitter_fraction);
    }
    t += dt;
    state.timing_totals_s[phase] += dt;
  }
};

// Scan the support surface for `course` (the slab for course 0, the
// tops of course-1 bricks otherwise).
CourseScan scan_support_surface(BuildContext& ctx, int course) {
  const SimulationConfig& cfg = ctx.cfg;
  PointCloud cloud;
  cloud.source = ScanSource::CourseTopScan;
  if (course == 0) {
    // Raster over the slab area below the first course.
    Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
    for (const PlacementPlan& plan : cfg.design.bricks) {
      if (plan.course_index != 0) continue;
      const OrientedRect2 rect = brick_footprint(plan.nominal_pose_world, cfg.design.nominal_brick.length,
                                                 cfg.design.nominal_brick.width);
      for (const Vec2& c : rect.corners()) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
      }
    }
    Rng rng(derive_seed(cfg.noise.master_seed, {kCourseScan, 0}));
    const double pitch = cfg.scan.pitch;
    const int nx = std::max(2, static_cast<int>(std::ceil((hi.x() - lo.x()) / pitch)) + 1);
    const int ny = std::max(2, static_cast<int>(std::ceil((hi.y() - lo.y()) / pitch)) + 1);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        Vec3 p(lo.x() + (hi.x() - lo.x()) * i / (nx - 1.0), lo.y() + (hi.y() - lo.y()) * j / (ny - 1.0),
               cfg.design.slab_top_z);
        if (cfg.noise.scan_sigma > 0.0) p.z() += rng.normal(0.0, cfg.noise.scan_sigma);
        cloud.points.push_back(p);
      }
    }
  } else {
    std::vector<const PlacedBrick*> below;
    for (const PlacedBrick& b : ctx.state.placed) {
      if (b.course == course - 1) below.push_back(&b);
    }
    const std::size_t n_scan = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(cfg.scan.coverage_fraction * below.size())));
    for (std::size_t i = 0; i < std::min(n_scan, below.size()); ++i) {
      const PlacedBrick& b = *below[i];
      const PointCloud part =
          simulate_brick_scan(b.true_pose, b.true_dims, cfg.design.slab_top_z, cfg.scan.pitch,
                              cfg.noise.scan_sigma, derive_seed(cfg.noise.master_seed, {kCourseScan,
                               static_cast<std::uint64_t>(course), i}));
      cloud.points.insert(cloud.points.end(), part.points.begin(), part.points.end());
    }
  }
  return summarize_course(cloud, course);
}

}  // namespace

BuildState run_build(const SimulationConfig& config, BuildMode mode) {
  config.design.validate();
  config.noise.validate();
  config.timing.validate();
  if (!(config.scan.pitch > 0.0)) throw Error(ErrorCode::ConfigError, "scan pitch must be positive");
  if (config.scan.coverage_fraction < 0.0 || config.scan.coverage_fraction > 1.0) {
    throw Error(ErrorCode::ConfigError, "scan coverage fraction must lie in [0, 1]");
  }

  BuildState state;
  state.mode = mode;
  state.seed = config.noise.master_seed;
  state.design_brick_count = config.design.bricks.size();

  BuildContext ctx{config, mode, state};
  ctx.event("build_start", "", build_mode_name(mode));

  const bool adaptive = mode == BuildMode::Adaptive;
  int current_course = -1;

  for (std::size_t i = 0; i < config.design.bricks.size(); ++i) {
    const PlacementPlan& plan = config.design.bricks[i];
    Rng dims_rng(derive_seed(config.noise.master_seed, {kDims, i}));
    Rng pickup_rng(derive_seed(config.noise.master_seed, {kPickup, i}));
    Rng act_rng(derive_seed(config.noise.master_seed, {kActuation, i}));
    Rng time_rng(derive_seed(config.noise.master_seed, {kTiming, i}));

    if (plan.course_index != current_course) {
      current_course = plan.course_index;
      if (adaptive) {
        state.course_scans.push_back(scan_support_surface(ctx, current_course));
        ctx.event("course_scan", "",
                  "course " + std::to_string(current_course) + " support, mean z " +
                      std::to_string(state.course_scans.back().mean_top_height));
      }
    }

    // True brick: dimensions from truncated Gaussians, pickup pose from
    // the queue pose plus planar noise; the brick rests on the platform
    // so its top height follows its true height.
    BrickDims true_dims;
    true_dims.length = dims_rng.truncated_normal(config.design.nominal_brick.length,
                                                 config.noise.dim_sigma.length);
    true_dims.width =
        dims_rng.truncated_normal(config.design.nominal_brick.width, config.noise.dim_sigma.width);
    true_dims.height =
        dims_rng.truncated_normal(config.design.nominal_brick.height, config.noise.dim_sigma.height);

    const Pose& queue_pose = config.design.pickup.queue_poses[i % config.design.pickup.queue_poses.size()];
    const double queue_yaw = pose_yaw(queue_pose);
    Pose true_pickup = Pose::from_yaw(
        queue_yaw + pickup_rng.normal(0.0, config.noise.pickup_pose_sigma.yaw),
        Vec3(queue_pose.translation.x() + pickup_rng.normal(0.0, config.noise.pickup_pose_sigma.xy),
             queue_pose.translation.y() + pickup_rng.normal(0.0, config.noise.pickup_pose_sigma.xy),
             config.design.pickup.platform_top_z + true_dims.height));

    ctx.spend("traversal", config.timing.traversal, time_rng, false);

    // Grasp: from the scan-estimated pose in adaptive mode, from the
    // nominal queue pose in open loop.
    Pose grasp_tcp;
    BrickObservation obs;
    std::vector<std::string> warnings;
    if (adaptive) {
      const PointCloud cloud = simulate_brick_scan(
          true_pickup, true_dims, config.design.pickup.platform_top_z, config.scan.pitch,
          config.noise.scan_sigma, derive_seed(config.noise.master_seed, {kBrickScan, i}));
      obs = estimate_brick(cloud, config.design.pickup.platform_top_z);
      grasp_tcp = grasp_pose(obs, config.adaptive);
      ctx.spend("scanning", config.timing.scanning, time_rng, false);
      ctx.spend("data_collection", config.timing.data_collection, time_rng, false);
      ctx.event("brick_scan", plan.brick_id,
                "est " + std::to_string(obs.length) + " x " + std::to_string(obs.width) + " x " +
                    std::to_string(obs.height));
    } else {
      grasp_tcp = compose(queue_pose, config.adaptive.grasp_offset);
    }
    const Pose in_hand = compose(invert(grasp_tcp), true_pickup);
    ctx.event("grasp", plan.brick_id);

    ctx.spend("adhesive", config.timing.adhesive, time_rng, true);
    ctx.spend("user_wait", config.timing.user_wait, time_rng, true);
    ctx.event("adhesive_applied", plan.brick_id);

    // Placement target for the brick-top frame.
    Pose commanded_top = plan.nominal_pose_world;
    double target_top_z = plan.nominal_pose_world.translation.z();
    if (adaptive) {
      const CorrectedPlacement corrected =
          corrected_placement(plan, state.course_scans.back(), obs, config.adaptive);
      commanded_top = corrected.pose_world;
      target_top_z = corrected.target_top_z;
      if (corrected.lateral_saturated) {
        warnings.push_back("lateral correction saturated at the gap budget");
      }
    }

    // Commanded TCP with actuation noise, then the true brick pose it
    // implies through the in-hand transform.
    Pose tcp_cmd = compose(commanded_top, config.adaptive.grasp_offset);
    Pose tcp_real = tcp_cmd;
    tcp_real.translation += Vec3(act_rng.normal(0.0, config.noise.actuation_sigma.xy),
                                 act_rng.normal(0.0, config.noise.actuation_sigma.xy),
                                 act_rng.normal(0.0, config.noise.actuation_sigma.z));
    const double dyaw = act_rng.normal(0.0, config.noise.actuation_sigma.yaw);
    tcp_real.rotation = Pose::from_yaw(dyaw).rotation * tcp_real.rotation;
    const Pose brick_pre_settle = compose(tcp_real, in_hand);

    // Supports: bricks of the course below (the slab backs course 0).
    std::vector<PlacedBrick> supports;
    std::vector<PlacedBrick> same_course;
    for (const PlacedBrick& b : state.placed) {
      if (b.course == plan.course_index - 1) supports.push_back(b);
      if (b.course == plan.course_index) same_course.push_back(b);
    }

    const SettleResult settled = settle(brick_pre_settle, true_dims, supports,
                                        config.design.slab_top_z, config.settle, plan.brick_id);
    if (settled.failure) {
      state.outcome = *settled.failure;
      ctx.event("failure", plan.brick_id,
                std::string(outcome_kind_name(settled.failure->kind)) + ", gap " +
                    std::to_string(settled.settle_gap));
      return state;
    }
    if (settled.final_pose.translation.z() != brick_pre_settle.translation.z()) {
      warnings.push_back("rode high on support by " +
                         std::to_string(settled.final_pose.translation.z() -
                                        brick_pre_settle.translation.z()));
    }

    const OrientedRect2 final_footprint =
        brick_footprint(settled.final_pose, true_dims.length, true_dims.width);
    if (auto hit = check_collisions(final_footprint, same_course, config.settle.xy_overlap_threshold)) {
      state.outcome = Outcome{OutcomeKind::CollisionFailure, plan.brick_id};
      ctx.event("failure", plan.brick_id, "in-course collision with " + *hit);
      return state;
    }

    PlacedBrick placed;
    placed.id = plan.brick_id;
    placed.course = plan.course_index;
    placed.true_pose = settled.final_pose;
    placed.true_dims = true_dims;
    placed.commanded_pose = commanded_top;
    placed.target_top_z = target_top_z;
    placed.settle_gap = settled.settle_gap;
    placed.warnings = std::move(warnings);
    state.placed.push_back(std::move(placed));
    ctx.event("placed", plan.brick_id,
              "top z " + std::to_string(settled.final_pose.translation.z()));
  }

  state.outcome = Outcome{OutcomeKind::Completed, ""};
  ctx.event("build_end", "", "completed");
  return state;
}

std::vector<double> course_mae(const BuildState& state, const WallDesign& design) {
  std::vector<double> sums(static_cast<std::size_t>(design.courses), 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(design.courses), 0);
  for (const PlacedBrick& b : state.placed) {
    const auto c = static_cast<std::size_t>(b.course);
    sums[c] += std::abs(b.true_pose.translation.z() - b.target_top_z);
    counts[c] += 1;
  }
  std::vector<double> mae(sums.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (counts[c] > 0) mae[c] = sums[c] / static_cast<double>(counts[c]);
  }
  return mae;
}

TimingReport timing_report(const BuildState& state) {
  TimingReport report;
  // Count attempted cycles: a failed brick spent its phases too.
  report.bricks =
      state.placed.size() + (state.outcome.kind == OutcomeKind::Completed ? 0 : 1);
  for (const auto& [phase, total] : state.timing_totals_s) {
    report.totals_s.emplace_back(phase, total);
    report.total_s += total;
  }
  for (const auto& [phase, total] : report.totals_s) {
    report.shares.emplace_back(phase, report.total_s > 0.0 ? total / report.total_s : 0.0);
  }
  report.per_brick_mean_s =
      report.bricks > 0 ? report.total_s / static_cast<double>(report.bricks) : 0.0;
  return report;
}

}  // namespace brickwork
