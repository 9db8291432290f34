#include "calibration.hpp"

#include <cmath>

#include "rng.hpp"

namespace brickwork {

const char* corner_name(Corner c) {
  switch (c) {
    case Corner::TL: return "TL";
    case Corner::TR: return "TR";
    case Corner::BR: return "BR";
    case Corner::BL: return "BL";
  }
  return "?";
}

Vec3 corner_ray_direction(const ProjectorModel& model, Corner corner) {
  const double tx = std::tan(0.5 * model.fov_x);
  const double ty = std::tan(0.5 * model.fov_y);
  double sx = 0.0, sy = 0.0;
  switch (corner) {
    case Corner::TL: sx = -1.0; sy = -1.0; break;
    case Corner::TR: sx = +1.0; sy = -1.0; break;
    case Corner::BR: sx = +1.0; sy = +1.0; break;
    case Corner::BL: sx = -1.0; sy = +1.0; break;
  }
  return Vec3(sx * tx, sy * ty, 1.0).normalized();
}

std::array<std::vector<Vec3>, 4> corners_to_tcp_frame(const CalibrationSession& session) {
  std::array<std::vector<Vec3>, 4> grouped;
  for (auto& g : grouped) g.reserve(session.shots.size());
  for (const CalibrationShot& shot : session.shots) {
    const Pose world_to_tcp = invert(shot.tcp_pose_world);
    for (Corner c : kCorners) {
      grouped[static_cast<int>(c)].push_back(world_to_tcp.apply(shot.corners_world[static_cast<int>(c)]));
    }
  }
  return grouped;
}

CalibrationResult calibrate(const CalibrationSession& session) {
  if (session.shots.size() < 3) {
    throw Error(ErrorCode::InsufficientShots,
                "calibration needs more than two projection poses, got " +
                    std::to_string(session.shots.size()));
  }
  const auto grouped = corners_to_tcp_frame(session);

  CalibrationResult result;
  std::array<Line3, 4> lines;
  for (int k = 0; k < 4; ++k) {
    bool ambiguous = false;
    lines[k] = fit_line_pca(grouped[k], &ambiguous);
    result.direction_ambiguous = result.direction_ambiguous || ambiguous;

    // Orient each cone edge outward: from the point of the line nearest
    // the TCP origin toward the probed corners (which lie in front of
    // the projector, away from the gripper).
    const Vec3 nearest = lines[k].point - lines[k].direction * lines[k].direction.dot(lines[k].point);
    if (lines[k].direction.dot(lines[k].point - nearest) < 0.0) {
      lines[k].direction = -lines[k].direction;
    }

    double sq = 0.0;
    for (const Vec3& p : grouped[k]) {
      const double d = lines[k].distance_to(p);
      sq += d * d;
    }
    result.per_line_rms_residual[k] = std::sqrt(sq / static_cast<double>(grouped[k].size()));
  }

  const Vec3 apex = closest_point_to_lines(lines);
  result.apex_objective = line_distance_objective(lines, apex);

  const auto dir = [&](Corner c) { return lines[static_cast<int>(c)].direction; };
  const Vec3 optical_axis = (dir(Corner::TL) + dir(Corner::TR) + dir(Corner::BR) + dir(Corner::BL)).normalized();
  const Vec3 x_axis = 0.5 * (dir(Corner::TR) + dir(Corner::BR)) - 0.5 * (dir(Corner::TL) + dir(Corner::BL));
  const Vec3 y_axis = 0.5 * (dir(Corner::BL) + dir(Corner::BR)) - 0.5 * (dir(Corner::TL) + dir(Corner::TR));

  Mat3 rotation;
  try {
    rotation = orthonormalize_frame(optical_axis, x_axis, y_axis);
  } catch (const Error& e) {
    // A mirrored y axis means the corner labels do not form the
    // TL/TR/BR/BL convention (probe data left-handed).
    throw Error(ErrorCode::InconsistentLabels, std::string("corner labeling inconsistent: ") + e.what());
  }

  result.model.extrinsic = Pose{rotation, apex};

  // FOV from the cone edge slopes seen in the recovered projector frame.
  double sum_x = 0.0, sum_y = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec3 d = rotation.transpose() * lines[k].direction;
    if (!(d.z() > 0.0)) {
      throw Error(ErrorCode::InconsistentLabels,
                  std::string("cone edge ") + corner_name(static_cast<Corner>(k)) +
                      " does not point in front of the projector");
    }
    sum_x += std::abs(d.x()) / d.z();
    sum_y += std::abs(d.y()) / d.z();
  }
  result.model.fov_x = 2.0 * std::atan(0.25 * sum_x);
  result.model.fov_y = 2.0 * std::atan(0.25 * sum_y);
  result.model.validate();

  // Conditioning of the apex normal matrix; NearParallel warns well
  // before the hard singularity guard trips.
  {
    Mat3 a = Mat3::Zero();
    for (const Line3& line : lines) {
      const Vec3 d = line.direction;
      a += Mat3::Identity() - d * d.transpose();
    }
    Eigen::JacobiSVD<Mat3> svd(a);
    const auto& sv = svd.singularValues();
    result.condition_flag =
        sv(2) < 1e-3 * sv(0) ? ConditionFlag::NearParallel : ConditionFlag::WellConditioned;
  }
  return result;
}

CalibrationSession synthesize_session(const ProjectorModel& model, const std::vector<Pose>& tcp_poses,
                                      const Plane& surface, double probe_noise_sigma,
                                      std::uint64_t seed) {
  model.validate();
  const Vec3 n = surface.normal.normalized();
  Rng rng(derive_seed(seed, {0x5e551}));

  CalibrationSession session;
  session.shots.reserve(tcp_poses.size());
  for (size_t i = 0; i < tcp_poses.size(); ++i) {
    CalibrationShot shot;
    shot.tcp_pose_world = tcp_poses[i];
    const Pose proj_world = compose(tcp_poses[i], model.extrinsic);
    for (Corner c : kCorners) {
      const Vec3 d = proj_world.rotation * corner_ray_direction(model, c);
      const double denom = d.dot(n);
      if (std::abs(denom) < 1e-12) {
        throw Error(ErrorCode::NoIntersection,
                    "shot " + std::to_string(i) + " corner " + corner_name(c) +
                        ": ray parallel to surface",
                    static_cast<long>(i));
      }
      const double t = (surface.point - proj_world.translation).dot(n) / denom;
      if (!(t > 0.0)) {
        throw Error(ErrorCode::NoIntersection,
                    "shot " + std::to_string(i) + " corner " + corner_name(c) +
                        ": surface behind projector",
                    static_cast<long>(i));
      }
      Vec3 hit = proj_world.translation + t * d;
      if (probe_noise_sigma > 0.0) {
        hit += Vec3(rng.normal(0.0, probe_noise_sigma), rng.normal(0.0, probe_noise_sigma),
                    rng.normal(0.0, probe_noise_sigma));
      }
      shot.corners_world[static_cast<int>(c)] = hit;
    }
    session.shots.push_back(shot);
  }
  return session;
}

}  // namespace brickwork
