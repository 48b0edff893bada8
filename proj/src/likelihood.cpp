#include "sceneest/likelihood.hpp"

#include "sceneest/parallel.hpp"

namespace sceneest {

namespace {

double likelihood_in_roi(const Pose6D& pose_world, const LikelihoodContext& ctx,
                         const PixelRect& roi, DepthImage& scratch) {
  const CameraIntrinsics& intr = ctx.camera->intr;
  std::fill(scratch.depth.begin(), scratch.depth.end(), DepthImage::kEmpty);
  const Pose6D pose_cam = compose(ctx.camera->world_to_camera(), pose_world);
  rasterize_into(ctx.model->mesh, pose_cam, intr, scratch);

  const PointCloud& obs = *ctx.observation;
  const double eps2 = ctx.params.epsilon * ctx.params.epsilon;
  int inliers = 0;
  for (int j = 0; j < scratch.height; ++j) {
    const int b = roi.y0 + j;
    for (int i = 0; i < scratch.width; ++i) {
      const double z = scratch.at(i, j);
      if (!DepthImage::is_valid(z)) continue;
      const int a = roi.x0 + i;
      if (!obs.is_valid(a, b)) continue;
      const Eigen::Vector3d rendered((a - intr.cx) * z / intr.fx,
                                     (b - intr.cy) * z / intr.fy, z);
      if ((obs.point(a, b) - rendered).squaredNorm() < eps2) ++inliers;
    }
  }
  return static_cast<double>(inliers) / obs.valid_count;
}

}  // namespace

std::optional<double> likelihood(const Pose6D& pose_world,
                                 const LikelihoodContext& ctx) {
  if (ctx.observation->valid_count == 0) return std::nullopt;
  const PixelRect roi = pixel_rect_of(ctx.box, ctx.camera->intr);
  if (roi.empty()) return 0.0;
  DepthImage scratch(roi.width(), roi.height(), roi.x0, roi.y0);
  return likelihood_in_roi(pose_world, ctx, roi, scratch);
}

bool likelihood_batch(const LikelihoodContext& ctx,
                      const std::vector<Pose6D>& poses,
                      std::vector<double>& out) {
  out.assign(poses.size(), 0.0);
  if (ctx.observation->valid_count == 0) return false;
  const PixelRect roi = pixel_rect_of(ctx.box, ctx.camera->intr);
  if (roi.empty()) return true;

  // Pixels outside the crop cannot be inliers (the observation is invalid
  // there), so rendering only the crop rectangle is exact.
  parallel_for(poses.size(), [&](std::size_t i) {
    thread_local DepthImage scratch;
    if (scratch.width != roi.width() || scratch.height != roi.height()) {
      scratch = DepthImage(roi.width(), roi.height(), roi.x0, roi.y0);
    }
    scratch.origin_x = roi.x0;
    scratch.origin_y = roi.y0;
    out[i] = likelihood_in_roi(poses[i], ctx, roi, scratch);
  });
  return true;
}

}  // namespace sceneest
