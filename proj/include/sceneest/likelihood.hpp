#pragma once

#include <optional>
#include <vector>

#include "sceneest/camera.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/point_cloud.hpp"
#include "sceneest/pose.hpp"
#include "sceneest/render.hpp"

namespace sceneest {

struct LikelihoodParams {
  double epsilon = 0.008;  // inlier radius, meters
};

// Everything a likelihood evaluation needs besides the pose hypothesis.
// `observation` must be organized at full camera resolution and already
// cropped to `box`; its valid-point count is the normalizer N_z.
struct LikelihoodContext {
  const ObjectModel* model = nullptr;
  const PointCloud* observation = nullptr;
  BBox2D box;
  const Camera* camera = nullptr;
  LikelihoodParams params;
};

// Fraction-of-inliers observation likelihood: renders the hypothesis,
// backprojects it, and counts pixels where the rendered and observed points
// are both valid and within epsilon (Euclidean), normalized by N_z.
// nullopt when the cropped observation is empty (N_z = 0).
std::optional<double> likelihood(const Pose6D& pose_world,
                                 const LikelihoodContext& ctx);

// Evaluates many hypotheses with a parallel map; out[i] belongs to poses[i]
// for any thread count. Returns false when N_z = 0.
bool likelihood_batch(const LikelihoodContext& ctx,
                      const std::vector<Pose6D>& poses,
                      std::vector<double>& out);

}  // namespace sceneest
