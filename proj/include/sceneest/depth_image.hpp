#pragma once

#include <limits>
#include <vector>

namespace sceneest {

// Organized depth buffer in meters; +inf marks empty pixels. origin_x/y give
// the global pixel coordinate of element (0, 0) so region-of-interest
// renders stay aligned with full-image buffers.
struct DepthImage {
  static constexpr double kEmpty = std::numeric_limits<double>::infinity();

  int width = 0;
  int height = 0;
  int origin_x = 0;
  int origin_y = 0;
  std::vector<double> depth;

  DepthImage() = default;
  DepthImage(int w, int h, int ox = 0, int oy = 0)
      : width(w), height(h), origin_x(ox), origin_y(oy),
        depth(static_cast<std::size_t>(w) * h, kEmpty) {}

  double& at(int i, int j) { return depth[static_cast<std::size_t>(j) * width + i]; }
  double at(int i, int j) const {
    return depth[static_cast<std::size_t>(j) * width + i];
  }

  static bool is_valid(double d) { return d != kEmpty; }

  int valid_count() const {
    int n = 0;
    for (double d : depth) n += is_valid(d) ? 1 : 0;
    return n;
  }
};

}  // namespace sceneest
