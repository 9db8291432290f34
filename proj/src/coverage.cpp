#include "coverage.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "rng.hpp"

namespace brickwork {

Mask Mask::create(int w, int h, double scale_m_per_px) {
  if (w < 1 || h < 1) throw Error(ErrorCode::InvalidArgument, "mask must be at least 1x1");
  Mask m;
  m.width = w;
  m.height = h;
  m.scale = scale_m_per_px;
  m.bits.assign(static_cast<std::size_t>(w) * h, 0);
  return m;
}

namespace {

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p, double eps = 1e-9) {
  const Vec2 ab = b - a, ap = p - a;
  const double cross = ab.x() * ap.y() - ab.y() * ap.x();
  if (std::abs(cross) > eps * std::max(1.0, ab.norm())) return false;
  const double dot = ap.dot(ab);
  return dot >= -eps && dot <= ab.squaredNorm() + eps;
}

}  // namespace

bool point_in_polygon(const RegionPolygon& poly, const Vec2& p) {
  const auto& v = poly.points;
  const std::size_t n = v.size();
  // Boundary counts as inside.
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(v[i], v[(i + 1) % n], p)) return true;
  }
  // Even-odd crossing rule.
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool cross = (v[i].y() > p.y()) != (v[j].y() > p.y());
    if (cross) {
      const double x_at =
          v[j].x() + (v[i].x() - v[j].x()) * (p.y() - v[j].y()) / (v[i].y() - v[j].y());
      if (p.x() < x_at) inside = !inside;
    }
  }
  return inside;
}

std::vector<std::uint8_t> rasterize_region(const RegionPolygon& region, int width, int height) {
  if (region.points.size() < 3) {
    throw Error(ErrorCode::EmptyRegion, "target region polygon needs at least 3 vertices");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(width) * height, 0);
  double lo_x = region.points[0].x(), hi_x = lo_x, lo_y = region.points[0].y(), hi_y = lo_y;
  for (const Vec2& p : region.points) {
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(lo_x)) - 1);
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(hi_x)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(lo_y)) - 1);
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(hi_y)) + 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (point_in_polygon(region, Vec2(x + 0.5, y + 0.5))) {
        bits[static_cast<std::size_t>(y) * width + x] = 1;
      }
    }
  }
  return bits;
}

CoverageReport analyze(const RegionPolygon& target_region, const Mask& adhesive) {
  if (adhesive.width < 1 || adhesive.height < 1 ||
      adhesive.bits.size() != static_cast<std::size_t>(adhesive.width) * adhesive.height) {
    throw Error(ErrorCode::InvalidArgument, "malformed adhesive mask");
  }
  const std::vector<std::uint8_t> region = rasterize_region(target_region, adhesive.width, adhesive.height);

  std::size_t region_px = 0, adhesive_px = 0, covered_px = 0, outside_px = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const bool r = region[i] != 0;
    const bool a = adhesive.bits[i] != 0;
    region_px += r;
    adhesive_px += a;
    covered_px += (r && a);
    outside_px += (a && !r);
  }
  if (region_px == 0) {
    throw Error(ErrorCode::EmptyRegion, "target region does not cover any pixel of the mask");
  }

  CoverageReport report;
  report.region_coverage = static_cast<double>(covered_px) / static_cast<double>(region_px);
  report.exposed_adhesive =
      adhesive_px == 0 ? 0.0 : static_cast<double>(outside_px) / static_cast<double>(adhesive_px);

  // Largest 4-connected uncovered component within the region.
  const int w = adhesive.width, h = adhesive.height;
  std::vector<std::uint8_t> visited(region.size(), 0);
  std::size_t largest = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (visited[idx] || region[idx] == 0 || adhesive.bits[idx] != 0) continue;
      std::size_t count = 0;
      stack.clear();
      stack.emplace_back(x, y);
      visited[idx] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++count;
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = cx + dx[k], ny = cy + dy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (visited[nidx] || region[nidx] == 0 || adhesive.bits[nidx] != 0) continue;
          visited[nidx] = 1;
          stack.emplace_back(nx, ny);
        }
      }
      largest = std::max(largest, count);
    }
  }
  report.largest_missed_patch = static_cast<double>(largest) / static_cast<double>(region_px);
  return report;
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

void rasterize_capsule(Mask& mask, const Vec2& a, const Vec2& b, double radius_px) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x(), b.x()) - radius_px)) - 1);
  const int x1 =
      std::min(mask.width - 1, static_cast<int>(std::ceil(std::max(a.x(), b.x()) + radius_px)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y(), b.y()) - radius_px)) - 1);
  const int y1 =
      std::min(mask.height - 1, static_cast<int>(std::ceil(std::max(a.y(), b.y()) + radius_px)) + 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (point_segment_distance(Vec2(x + 0.5, y + 0.5), a, b) <= radius_px) {
        mask.set(x, y, true);
      }
    }
  }
}

}  // namespace

Mask synth_application(const RegionPolygon& region, const ApplicationStyle& style, int width,
                       int height, double scale_m_per_px) {
  if (!(style.bead_width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bead width must be positive");
  }
  if (!(scale_m_per_px > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mask scale must be positive");
  }
  Mask mask = Mask::create(width, height, scale_m_per_px);
  if (style.stroke_count <= 0) return mask;
  if (region.points.size() < 3) {
    throw Error(ErrorCode::EmptyRegion, "target region polygon needs at least 3 vertices");
  }

  double lo_x = region.points[0].x(), hi_x = lo_x, lo_y = region.points[0].y(), hi_y = lo_y;
  for (const Vec2& p : region.points) {
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  }

  Rng rng(derive_seed(style.seed, {0xbead}));
  const double bead_px = style.bead_width / scale_m_per_px;
  const double jitter_px = style.placement_jitter_sigma / scale_m_per_px;
  const double margin = 0.5 * bead_px;

  // Horizontal strokes stacked to tile the region's bounding box.
  for (int s = 0; s < style.stroke_count; ++s) {
    const double frac = style.stroke_count == 1
                            ? 0.5
                            : static_cast<double>(s) / static_cast<double>(style.stroke_count - 1);
    const double y_nominal = (lo_y + margin) + frac * std::max(0.0, hi_y - lo_y - 2.0 * margin);
    Vec2 a(lo_x + margin, y_nominal);
    Vec2 b(hi_x - margin, y_nominal);
    if (jitter_px > 0.0) {
      a += Vec2(rng.normal(0.0, jitter_px), rng.normal(0.0, jitter_px));
      b += Vec2(rng.normal(0.0, jitter_px), rng.normal(0.0, jitter_px));
    }
    if (style.angular_jitter_sigma > 0.0) {
      const double ang = rng.normal(0.0, style.angular_jitter_sigma);
      const Vec2 mid = 0.5 * (a + b);
      const double c = std::cos(ang), sn = std::sin(ang);
      const auto rot = [&](const Vec2& p) {
        const Vec2 d = p - mid;
        return Vec2(mid.x() + c * d.x() - sn * d.y(), mid.y() + sn * d.x() + c * d.y());
      };
      a = rot(a);
      b = rot(b);
    }
    rasterize_capsule(mask, a, b, 0.5 * bead_px);
  }
  return mask;
}

}  // namespace brickwork
