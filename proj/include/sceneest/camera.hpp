#pragma once

#include <optional>

#include <Eigen/Core>

#include "sceneest/bbox.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// Pinhole model. The camera frame has +z forward, +x right, +y image-down;
// pixel (a, b) samples the ray through continuous image point (a, b):
//   u = fx * x / z + cx,  v = fy * y / z + cy.
struct CameraIntrinsics {
  int width = 0;
  int height = 0;
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  double z_near = 0.05;
  double z_far = 10.0;
};

// Intrinsics plus the camera-in-world extrinsic pose.
struct Camera {
  CameraIntrinsics intr;
  Pose6D pose;

  Pose6D world_to_camera() const { return invert(pose); }
};

inline Eigen::Vector2d project_point(const CameraIntrinsics& intr,
                                     const Eigen::Vector3d& p_cam) {
  return {intr.fx * p_cam.x() / p_cam.z() + intr.cx,
          intr.fy * p_cam.y() / p_cam.z() + intr.cy};
}

// Tight bounds of the projections of mesh vertices in front of the near
// plane, clamped to the image. Empty (nullopt) when nothing is visible.
std::optional<BBox2D> project_bbox(const ObjectModel& model,
                                   const Pose6D& pose_cam,
                                   const CameraIntrinsics& intr);

// Same, for an object posed in the world frame.
std::optional<BBox2D> project_bbox_world(const ObjectModel& model,
                                         const Pose6D& pose_world,
                                         const Camera& camera);

}  // namespace sceneest
