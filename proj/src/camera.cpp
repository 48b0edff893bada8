#include "sceneest/camera.hpp"

#include <algorithm>
#include <limits>

namespace sceneest {

std::optional<BBox2D> project_bbox(const ObjectModel& model,
                                   const Pose6D& pose_cam,
                                   const CameraIntrinsics& intr) {
  double min_u = std::numeric_limits<double>::infinity();
  double min_v = std::numeric_limits<double>::infinity();
  double max_u = -std::numeric_limits<double>::infinity();
  double max_v = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& v : model.mesh.vertices) {
    const Eigen::Vector3d p = pose_cam.apply(v);
    if (p.z() <= intr.z_near) continue;
    const Eigen::Vector2d uv = project_point(intr, p);
    min_u = std::min(min_u, uv.x());
    max_u = std::max(max_u, uv.x());
    min_v = std::min(min_v, uv.y());
    max_v = std::max(max_v, uv.y());
    any = true;
  }
  if (!any) return std::nullopt;
  BBox2D box{std::max(min_u, 0.0), std::max(min_v, 0.0),
             std::min(max_u, static_cast<double>(intr.width)),
             std::min(max_v, static_cast<double>(intr.height))};
  if (!box.valid()) return std::nullopt;
  return box;
}

std::optional<BBox2D> project_bbox_world(const ObjectModel& model,
                                         const Pose6D& pose_world,
                                         const Camera& camera) {
  return project_bbox(model, compose(camera.world_to_camera(), pose_world),
                      camera.intr);
}

}  // namespace sceneest
