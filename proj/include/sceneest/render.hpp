#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sceneest/bbox.hpp"
#include "sceneest/camera.hpp"
#include "sceneest/depth_image.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/point_cloud.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

PixelRect full_rect(const CameraIntrinsics& intr);

// Pixels whose integer sample coordinate falls inside `box`, clamped to the
// image.
PixelRect pixel_rect_of(const BBox2D& box, const CameraIntrinsics& intr);

// Rasterizes the mesh posed in the camera frame into `buf` (z-buffered,
// nearest wins). Perspective-correct interpolation, top-left fill rule,
// geometric clipping at z_near, fragments kept only for z in (z_near, z_far).
void rasterize_into(const TriMesh& mesh, const Pose6D& pose_cam,
                    const CameraIntrinsics& intr, DepthImage& buf);

// Single-object depth render over the full image.
DepthImage render_depth(const ObjectModel& model, const Pose6D& pose_cam,
                        const CameraIntrinsics& intr);

// Single-object render restricted to a pixel rectangle.
DepthImage render_depth_roi(const ObjectModel& model, const Pose6D& pose_cam,
                            const CameraIntrinsics& intr, const PixelRect& roi);

// Joint z-buffer over all (model, camera-frame pose) pairs.
DepthImage render_scene_depth(
    const std::vector<std::pair<const ObjectModel*, Pose6D>>& objects,
    const CameraIntrinsics& intr);

// Inverse pinhole map; empty pixels become invalid points. Throws
// std::invalid_argument when the full-image buffer does not match the camera
// dimensions.
PointCloud backproject(const DepthImage& depth, const CameraIntrinsics& intr);

// Organized sub-cloud: pixels outside `box` are invalidated, the grid and
// alignment are preserved. nullopt when the box misses the image entirely.
std::optional<PointCloud> crop(const PointCloud& cloud, const BBox2D& box);

// I.i.d. zero-mean Gaussian perturbation of valid depths, clamped to
// (z_near, z_far). sigma = 0 returns the input bit-for-bit.
DepthImage add_depth_noise(const DepthImage& depth,
                           const CameraIntrinsics& intr, double sigma,
                           std::uint64_t seed);

// Tabletop support-plane segmentation: invalidates camera-frame points whose
// world z is at or below plane_z + margin. Returns the number removed.
int remove_support_plane(PointCloud& cloud, const Camera& camera,
                         double plane_z, double margin);

}  // namespace sceneest
