#pragma once

#include <algorithm>
#include <cmath>

namespace sceneest {

// Axis-aligned image-space box in real-valued pixel coordinates.
// A pixel sample (a, b) at integer coordinates belongs to the box when
// min <= coordinate < max (half-open).
struct BBox2D {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  bool valid() const { return max_x > min_x && max_y > min_y; }

  bool contains_pixel(int a, int b) const {
    return a >= min_x && a < max_x && b >= min_y && b < max_y;
  }

  BBox2D dilated(double d) const {
    return {min_x - d, min_y - d, max_x + d, max_y + d};
  }

  bool operator==(const BBox2D&) const = default;
};

inline double intersection_area(const BBox2D& a, const BBox2D& b) {
  const double w = std::min(a.max_x, b.max_x) - std::max(a.min_x, b.min_x);
  const double h = std::min(a.max_y, b.max_y) - std::max(a.min_y, b.min_y);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

inline double iou(const BBox2D& a, const BBox2D& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  return inter / (a.area() + b.area() - inter);
}

}  // namespace sceneest
