#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace sceneest {

// Rigid transform: translation in meters plus a unit quaternion. The
// quaternion is re-normalized on construction and after every composition.
// Roll-pitch-yaw uses the extrinsic x-y-z convention,
// R = Rz(yaw) * Ry(pitch) * Rx(roll).
struct Pose6D {
  Eigen::Vector3d translation{0.0, 0.0, 0.0};
  Eigen::Quaterniond orientation{1.0, 0.0, 0.0, 0.0};

  Pose6D() = default;
  Pose6D(const Eigen::Vector3d& t, const Eigen::Quaterniond& q);

  static Pose6D identity() { return {}; }
  static Pose6D translate(double x, double y, double z);
  static Pose6D from_rpy(const Eigen::Vector3d& t, double roll, double pitch,
                         double yaw);

  Eigen::Vector3d rpy() const;
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;
  Eigen::Matrix4d matrix() const;
};

Pose6D compose(const Pose6D& a, const Pose6D& b);
Pose6D invert(const Pose6D& p);

// Shortest equivalent angle in (-pi, pi].
double wrap_angle(double a);

// Geodesic angle between two orientations, in [0, pi].
double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

// Per-axis wrapped roll/pitch/yaw error magnitudes between two orientations.
Eigen::Vector3d rpy_error(const Eigen::Quaterniond& estimate,
                          const Eigen::Quaterniond& truth);

// Camera-in-world pose with +z pointing at target and +y as image-down.
Pose6D look_at(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
               const Eigen::Vector3d& up = Eigen::Vector3d(0, 0, 1));

}  // namespace sceneest
