#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace brickwork {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid transform in SE(3). Rotations are stored as orthonormal
/// matrices; quaternions appear only at IO boundaries.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose identity() { return {}; }
  static Pose from_translation(const Vec3& t) { return {Mat3::Identity(), t}; }
  static Pose from_yaw(double yaw, const Vec3& t = Vec3::Zero());

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 x_axis() const { return rotation.col(0); }
  Vec3 y_axis() const { return rotation.col(1); }
  Vec3 z_axis() const { return rotation.col(2); }
};

/// Applies b then a (a*b in homogeneous form).
Pose compose(const Pose& a, const Pose& b);
Pose invert(const Pose& p);

bool is_rotation(const Mat3& r, double tol = 1e-9);
/// Angle of the relative rotation between two frames, in radians.
double rotation_angle_between(const Mat3& a, const Mat3& b);

struct Line3 {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();  // unit length

  double distance_to(const Vec3& p) const {
    const Vec3 d = p - point;
    return (d - direction * direction.dot(d)).norm();
  }
};

struct Plane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  double signed_distance(const Vec3& p) const { return normal.normalized().dot(p - point); }
};

/// Oriented rectangle in the plane. half_extents are ordered
/// (first >= second) and yaw, the direction of the first axis, is
/// normalized to [-pi/2, pi/2).
struct OrientedRect2 {
  Vec2 center = Vec2::Zero();
  Vec2 half_extents = Vec2::Ones();
  double yaw = 0.0;

  double area() const { return 4.0 * half_extents.x() * half_extents.y(); }
  Vec2 axis_long() const { return {std::cos(yaw), std::sin(yaw)}; }
  Vec2 axis_short() const { return {-std::sin(yaw), std::cos(yaw)}; }
  std::array<Vec2, 4> corners() const;
  bool contains(const Vec2& p, double slack = 1e-9) const;
};

/// Least-squares 3D line through a point set (principal component of
/// the covariance). The direction sign is arbitrary; callers that need
/// an orientation fix it themselves. If the top two eigenvalues tie
/// within 1e-9 relative, *direction_ambiguous is set (not fatal).
Line3 fit_line_pca(std::span<const Vec3> points, bool* direction_ambiguous = nullptr);

/// Point minimizing the sum of squared distances to the lines, via the
/// 3x3 normal equations. Throws SingularConfiguration when the normal
/// matrix is rank deficient (all lines parallel).
Vec3 closest_point_to_lines(std::span<const Line3> lines);

/// Sum of squared point-line distances (the objective minimized above).
double line_distance_objective(std::span<const Line3> lines, const Vec3& o);

/// Convex hull, counter-clockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

/// Minimum-area oriented bounding rectangle via rotating calipers over
/// the convex hull. Throws DegenerateInput when the points are
/// collinear within 1e-9.
OrientedRect2 min_area_rect(std::span<const Vec2> points);

/// Right-handed frame with column z equal to normalized z_axis exactly,
/// x from x_hint with its z-component removed, and y = z cross x.
/// y_hint, when nonzero, must agree in sign with the resulting y
/// (a mirrored hint means the caller's axis conventions are broken).
Mat3 orthonormalize_frame(const Vec3& z_axis, const Vec3& x_hint, const Vec3& y_hint = Vec3::Zero());

/// Penetration depth of two oriented rectangles (separating axes).
/// Positive = overlapping by that depth, negative = separated by that
/// clearance.
double rect_overlap_depth(const OrientedRect2& a, const OrientedRect2& b);

}  // namespace brickwork
