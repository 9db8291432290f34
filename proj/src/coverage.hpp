#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"

namespace brickwork {

/// Binary occupancy raster (row-major, top-left origin, x right, y down).
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 or 1
  double scale = 0.001;            // m per pixel

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  static Mask create(int w, int h, double scale_m_per_px);
};

struct CoverageReport {
  double region_coverage = 0.0;      // fraction of the target region covered
  double exposed_adhesive = 0.0;     // fraction of adhesive pixels outside the region
  double largest_missed_patch = 0.0;  // largest uncovered 4-connected component / region
};

/// Simple polygon in mask pixel coordinates (pixel centers at integer
/// coordinates + 0.5 along each axis is NOT used; vertices are plain
/// pixel-unit coordinates and a pixel belongs to the region when its
/// center lies inside or on the boundary).
struct RegionPolygon {
  std::vector<Vec2> points;
};

/// Rasterized region mask for a polygon (pixel-center test, boundary
/// counts as inside), clipped to the mask grid.
std::vector<std::uint8_t> rasterize_region(const RegionPolygon& region, int width, int height);

/// Coverage metrics of an adhesive mask against a target region.
/// An all-empty adhesive mask is valid input (coverage 0, exposed 0).
CoverageReport analyze(const RegionPolygon& target_region, const Mask& adhesive);

/// Stochastic stand-in for a human applying adhesive in bead strokes.
struct ApplicationStyle {
  double bead_width = 0.012;             // m
  int stroke_count = 8;
  double placement_jitter_sigma = 0.0;   // m
  double angular_jitter_sigma = 0.0;     // rad
  std::uint64_t seed = 0;
};

/// Rasterized capsule strokes laid across the region's bounding box
/// with jittered endpoints. Deterministic per seed.
Mask synth_application(const RegionPolygon& region, const ApplicationStyle& style, int width,
                       int height, double scale_m_per_px);

bool point_in_polygon(const RegionPolygon& poly, const Vec2& p);

}  // namespace brickwork
