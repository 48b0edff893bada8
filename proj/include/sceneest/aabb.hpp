#pragma once

#include <Eigen/Core>

namespace sceneest {

struct Aabb {
  Eigen::Vector3d min{0, 0, 0};
  Eigen::Vector3d max{0, 0, 0};

  bool contains(const Eigen::Vector3d& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y() && p.z() >= min.z() && p.z() <= max.z();
  }

  Eigen::Vector3d extent() const { return max - min; }

  bool valid() const {
    return max.x() > min.x() && max.y() > min.y() && max.z() > min.z();
  }

  Aabb intersected(const Aabb& o) const {
    return {min.cwiseMax(o.min), max.cwiseMin(o.max)};
  }

  void expand(const Eigen::Vector3d& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
};

}  // namespace sceneest
