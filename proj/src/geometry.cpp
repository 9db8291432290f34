#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace brickwork {

Pose Pose::from_yaw(double yaw, const Vec3& t) {
  Pose p;
  const double c = std::cos(yaw), s = std::sin(yaw);
  p.rotation << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  p.translation = t;
  return p;
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

Pose invert(const Pose& p) {
  const Mat3 rt = p.rotation.transpose();
  return {rt, -(rt * p.translation)};
}

bool is_rotation(const Mat3& r, double tol) {
  const Mat3 err = r.transpose() * r - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

double rotation_angle_between(const Mat3& a, const Mat3& b) {
  const Mat3 rel = a.transpose() * b;
  const double c = std::clamp((rel.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

std::array<Vec2, 4> OrientedRect2::corners() const {
  const Vec2 u = axis_long() * half_extents.x();
  const Vec2 v = axis_short() * half_extents.y();
  return {center + u + v, center - u + v, center - u - v, center + u - v};
}

bool OrientedRect2::contains(const Vec2& p, double slack) const {
  const Vec2 d = p - center;
  return std::abs(d.dot(axis_long())) <= half_extents.x() + slack &&
         std::abs(d.dot(axis_short())) <= half_extents.y() + slack;
}

Line3 fit_line_pca(std::span<const Vec3> points, bool* direction_ambiguous) {
  if (direction_ambiguous) *direction_ambiguous = false;
  if (points.size() < 2) {
    throw Error(ErrorCode::DegenerateInput, "line fit needs at least 2 points");
  }
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : points) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
  const Vec3 evals = es.eigenvalues();  // ascending
  const double lead = evals(2);
  if (!(lead > 1e-24 * std::max(1.0, centroid.squaredNorm()))) {
    throw Error(ErrorCode::DegenerateInput, "line fit needs at least 2 distinct points");
  }
  if (direction_ambiguous && evals(2) - evals(1) <= 1e-9 * lead) {
    *direction_ambiguous = true;
  }
  return {centroid, es.eigenvectors().col(2).normalized()};
}

Vec3 closest_point_to_lines(std::span<const Line3> lines) {
  Mat3 a = Mat3::Zero();
  Vec3 b = Vec3::Zero();
  for (const Line3& line : lines) {
    const Vec3 d = line.direction.normalized();
    const Mat3 proj = Mat3::Identity() - d * d.transpose();
    a += proj;
    b += proj * line.point;
  }
  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(2) < 1e-9 * sv(0)) {
    throw Error(ErrorCode::SingularConfiguration, "lines are (near) parallel, apex undetermined");
  }
  return svd.solve(b);
}

double line_distance_objective(std::span<const Line3> lines, const Vec3& o) {
  double sum = 0.0;
  for (const Line3& line : lines) {
    const double d = line.distance_to(o);
    sum += d * d;
  }
  return sum;
}

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a == b; }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;

  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower_end = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower_end && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

OrientedRect2 min_area_rect(std::span<const Vec2> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::DegenerateInput, "min-area rectangle needs at least 3 points");
  }
  const std::vector<Vec2> hull = convex_hull(points);

  // Collinearity test: max deviation from the line through the two
  // most distant hull endpoints.
  {
    const std::vector<Vec2>& h = hull.size() >= 2 ? hull : std::vector<Vec2>(points.begin(), points.end());
    Vec2 a = h.front(), b = h.front();
    for (const Vec2& p : h) {
      if ((p - a).squaredNorm() > (b - a).squaredNorm()) b = p;
    }
    for (const Vec2& p : h) {
      if ((p - b).squaredNorm() > (a - b).squaredNorm()) a = p;
    }
    const double len = (b - a).norm();
    double max_dev = 0.0;
    if (len > 0.0) {
      const Vec2 dir = (b - a) / len;
      const Vec2 nrm(-dir.y(), dir.x());
      for (const Vec2& p : points) max_dev = std::max(max_dev, std::abs(nrm.dot(p - a)));
    }
    if (max_dev <= 1e-9) {
      throw Error(ErrorCode::DegenerateInput, "points are collinear");
    }
  }

  // The minimal rectangle has a side collinear with a hull edge, so
  // scanning hull edges is exact.
  double best_area = std::numeric_limits<double>::infinity();
  Vec2 best_u = Vec2::UnitX();
  double best_umin = 0, best_umax = 0, best_vmin = 0, best_vmax = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
    const double len = e.norm();
    if (len <= 0.0) continue;
    const Vec2 u = e / len;
    const Vec2 v(-u.y(), u.x());
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const Vec2& p : hull) {
      const double pu = u.dot(p), pv = v.dot(p);
      umin = std::min(umin, pu);
      umax = std::max(umax, pu);
      vmin = std::min(vmin, pv);
      vmax = std::max(vmax, pv);
    }
    const double area = (umax - umin) * (vmax - vmin);
    if (area < best_area) {
      best_area = area;
      best_u = u;
      best_umin = umin;
      best_umax = umax;
      best_vmin = vmin;
      best_vmax = vmax;
    }
  }

  const Vec2 v(-best_u.y(), best_u.x());
  OrientedRect2 rect;
  rect.center = best_u * (0.5 * (best_umin + best_umax)) + v * (0.5 * (best_vmin + best_vmax));
  double he_u = 0.5 * (best_umax - best_umin);
  double he_v = 0.5 * (best_vmax - best_vmin);
  Vec2 axis = best_u;
  if (he_v > he_u) {
    std::swap(he_u, he_v);
    axis = v;
  }
  rect.half_extents = {he_u, he_v};
  rect.yaw = std::atan2(axis.y(), axis.x());
  while (rect.yaw < -M_PI / 2) rect.yaw += M_PI;
  while (rect.yaw >= M_PI / 2) rect.yaw -= M_PI;
  return rect;
}

Mat3 orthonormalize_frame(const Vec3& z_axis, const Vec3& x_hint, const Vec3& y_hint) {
  const double zn = z_axis.norm();
  if (!(zn > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "zero z axis");
  }
  const Vec3 z = z_axis / zn;
  Vec3 x = x_hint - z * z.dot(x_hint);
  const double xn = x.norm();
  if (!(xn > 1e-9 * std::max(1.0, x_hint.norm()))) {
    throw Error(ErrorCode::DegenerateInput, "x hint parallel to z axis");
  }
  x /= xn;
  const Vec3 y = z.cross(x);
  if (y_hint.squaredNorm() > 0.0 && y.dot(y_hint) < 0.0) {
    throw Error(ErrorCode::DegenerateInput, "y hint violates right-handed frame");
  }
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

double rect_overlap_depth(const OrientedRect2& a, const OrientedRect2& b) {
  const std::array<Vec2, 4> axes = {a.axis_long(), a.axis_short(), b.axis_long(), b.axis_short()};
  const std::array<Vec2, 4> ca = a.corners();
  const std::array<Vec2, 4> cb = b.corners();
  double depth = std::numeric_limits<double>::infinity();
  for (const Vec2& axis : axes) {
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    double bmin = amin, bmax = -amin;
    for (const Vec2& p : ca) {
      const double s = axis.dot(p);
      amin = std::min(amin, s);
      amax = std::max(amax, s);
    }
    for (const Vec2& p : cb) {
      const double s = axis.dot(p);
      bmin = std::min(bmin, s);
      bmax = std::max(bmax, s);
    }
    depth = std::min(depth, std::min(amax, bmax) - std::max(amin, bmin));
  }
  // For rectangles the minimum translation vector lies along one of the
  // four edge normals, so this depth is exact when positive.
  return depth;
}

}  // namespace brickwork
