#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace sceneest {

// Organized cloud of camera-frame points, aligned with the depth image that
// produced it. Invalid cells keep a zero point and a cleared flag.
struct PointCloud {
  int width = 0;
  int height = 0;
  int origin_x = 0;
  int origin_y = 0;
  std::vector<Eigen::Vector3d> points;
  std::vector<std::uint8_t> valid;
  int valid_count = 0;

  PointCloud() = default;
  PointCloud(int w, int h, int ox = 0, int oy = 0)
      : width(w), height(h), origin_x(ox), origin_y(oy),
        points(static_cast<std::size_t>(w) * h, Eigen::Vector3d::Zero()),
        valid(static_cast<std::size_t>(w) * h, 0) {}

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * width + i;
  }

  bool is_valid(int i, int j) const { return valid[index(i, j)] != 0; }
  const Eigen::Vector3d& point(int i, int j) const { return points[index(i, j)]; }
};

}  // namespace sceneest
