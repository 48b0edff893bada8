#include "sceneest/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sceneest/rng.hpp"

namespace sceneest {

std::optional<ParticleSet> init_particles(const BBox2D& box,
                                          const Camera& camera,
                                          const Aabb& workspace, int n,
                                          std::uint64_t seed) {
  if (n < 1 || !box.valid() || !workspace.valid()) return std::nullopt;
  const CameraIntrinsics& intr = camera.intr;

  // World-frame bounding box of the box's frustum section, intersected with
  // the workspace; positions are then rejection-sampled inside it.
  Aabb frustum{Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity()),
               Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity())};
  for (double z : {intr.z_near, intr.z_far}) {
    for (double u : {box.min_x, box.max_x}) {
      for (double v : {box.min_y, box.max_y}) {
        const Eigen::Vector3d p_cam((u - intr.cx) * z / intr.fx,
                                    (v - intr.cy) * z / intr.fy, z);
        frustum.expand(camera.pose.apply(p_cam));
      }
    }
  }
  const Aabb support = frustum.intersected(workspace);
  if (!support.valid()) return std::nullopt;

  Rng rng(seed);
  const Pose6D world_to_cam = camera.world_to_camera();
  ParticleSet ps;
  ps.poses.reserve(n);
  const long max_attempts = std::max(100000L, 400L * n);
  long attempts = 0;
  while (ps.size() < n && attempts < max_attempts) {
    ++attempts;
    const Eigen::Vector3d p(rng.uniform(support.min.x(), support.max.x()),
                            rng.uniform(support.min.y(), support.max.y()),
                            rng.uniform(support.min.z(), support.max.z()));
    const Eigen::Vector3d p_cam = world_to_cam.apply(p);
    if (p_cam.z() <= intr.z_near || p_cam.z() >= intr.z_far) continue;
    const Eigen::Vector2d uv = project_point(intr, p_cam);
    if (uv.x() < box.min_x || uv.x() >= box.max_x || uv.y() < box.min_y ||
        uv.y() >= box.max_y) {
      continue;
    }
    ps.poses.emplace_back(p, rng.uniform_quaternion());
  }
  if (ps.size() < n) return std::nullopt;
  ps.weights.assign(n, 1.0 / n);
  return ps;
}

bool reweight(ParticleSet& ps, std::span<const double> likelihoods) {
  double sum = 0.0;
  for (int i = 0; i < ps.size(); ++i) {
    ps.weights[i] *= likelihoods[i];
    sum += ps.weights[i];
  }
  if (sum <= 0.0) {
    std::fill(ps.weights.begin(), ps.weights.end(), 1.0 / ps.size());
    return true;
  }
  for (double& w : ps.weights) w /= sum;
  return false;
}

ParticleSet resample(const ParticleSet& ps, std::uint64_t seed) {
  const int n = ps.size();
  Rng rng(seed);
  const double step = 1.0 / n;
  double position = rng.uniform() * step;
  ParticleSet out;
  out.poses.reserve(n);
  out.weights.assign(n, step);
  double cumulative = ps.weights[0];
  int i = 0;
  for (int j = 0; j < n; ++j) {
    while (position > cumulative && i + 1 < n) {
      ++i;
      cumulative += ps.weights[i];
    }
    out.poses.push_back(ps.poses[i]);
    position += step;
  }
  return out;
}

int map_index(const ParticleSet& ps) {
  int best = 0;
  for (int i = 1; i < ps.size(); ++i) {
    if (ps.weights[i] > ps.weights[best]) best = i;
  }
  return best;
}

Pose6D map_estimate(const ParticleSet& ps) { return ps.poses[map_index(ps)]; }

double posterior_score(double box_confidence, double label_confidence,
                       double bel_value) {
  return box_confidence * label_confidence * bel_value;
}

void predict(ParticleSet& ps, const Action& action, bool is_target,
             const ActionModelParams& params, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& pose : ps.poses) {
    if (is_target) {
      if (rng.bernoulli(params.w1)) {
        pose.translation = action.place_pose.translation + rng.normal3(params.sigma1);
        pose.orientation =
            (rng.rotation_noise(params.rot_sigma1) * action.place_pose.orientation)
                .normalized();
      } else {
        pose.translation += rng.normal3(params.sigma2);
        pose.orientation =
            (rng.rotation_noise(params.rot_sigma2) * pose.orientation).normalized();
      }
    } else {
      pose.translation += rng.normal3(params.sigma3);
      pose.orientation =
          (rng.rotation_noise(params.rot_sigma3) * pose.orientation).normalized();
    }
  }
}

double effective_sample_size(const ParticleSet& ps) {
  double sum_sq = 0.0;
  for (double w : ps.weights) sum_sq += w * w;
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

namespace {

// One diffuse -> reweight -> resample pass over `ps`, with annealed sigmas
// scaled by decay^iteration. Updates the incumbent best hypothesis.
void ilw_iteration(ParticleSet& ps, const LikelihoodContext& ctx,
                   const IlwParams& params, int iteration, double anneal,
                   Rng& diffuse_rng, std::uint64_t resample_seed,
                   std::vector<double>& lik, IlwResult& result,
                   double& best_ever, std::vector<IlwIterationStat>* stats) {
  const DiffusionParams& diff = params.diffusion;
  const bool split_depth = diff.depth_axis.squaredNorm() > 0.5;
  const Eigen::Vector3d axis =
      split_depth ? diff.depth_axis.normalized() : Eigen::Vector3d::UnitZ();
  const bool split_spin = diff.spin_axis.squaredNorm() > 0.5;
  const Eigen::Vector3d spin =
      split_spin ? diff.spin_axis.normalized() : Eigen::Vector3d::UnitZ();
  const double sigma_t = diff.trans_sigma * anneal;
  const double sigma_d = diff.depth_sigma * anneal;
  const double sigma_r = diff.rot_sigma * anneal;

  for (auto& pose : ps.poses) {
    Eigen::Vector3d kick = diffuse_rng.normal3(sigma_t);
    if (split_depth) {
      kick -= axis * axis.dot(kick);
      kick += axis * diffuse_rng.normal(0.0, sigma_d);
    }
    pose.translation += kick;
    double sr = sigma_r;
    if (diff.wide_fraction > 0.0 && diffuse_rng.bernoulli(diff.wide_fraction)) {
      sr = diff.wide_rot_sigma;
    }
    if (split_spin) {
      Eigen::Vector3d w = diffuse_rng.normal3(sr * diff.tilt_ratio);
      w += spin * diffuse_rng.normal(0.0, sr) - spin * spin.dot(w);
      const double angle = w.norm();
      const Eigen::Quaterniond dq =
          angle < 1e-300 ? Eigen::Quaterniond::Identity()
                         : Eigen::Quaterniond(Eigen::AngleAxisd(angle, w / angle));
      pose.orientation = (dq * pose.orientation).normalized();
    } else {
      pose.orientation =
          (diffuse_rng.rotation_noise(sr) * pose.orientation).normalized();
    }
  }
  likelihood_batch(ctx, ps.poses, lik);

  // The reported point estimate is the best hypothesis evaluated anywhere
  // in the run, so a briefly-visited sharp mode is never lost to
  // resampling.
  const int arg = static_cast<int>(std::max_element(lik.begin(), lik.end()) -
                                   lik.begin());
  if (lik[arg] > best_ever) {
    best_ever = lik[arg];
    result.map_pose = ps.poses[arg];
    result.map_likelihood = lik[arg];
  }

  result.degenerate |= reweight(ps, lik);
  if (stats) {
    const int mi = map_index(ps);
    stats->push_back(
        {iteration, effective_sample_size(ps), ps.weights[mi], result.map_pose});
  }
  if (params.resample_ess_fraction >= 1.0 ||
      effective_sample_size(ps) < params.resample_ess_fraction * ps.size()) {
    ps = resample(ps, resample_seed);
  }
}

}  // namespace

std::optional<IlwResult> iterated_likelihood_weighting(
    const ParticleSet& input, const LikelihoodContext& ctx,
    const IlwParams& params, std::uint64_t seed,
    std::vector<IlwIterationStat>* stats) {
  if (ctx.observation->valid_count == 0) return std::nullopt;

  IlwResult result;
  std::vector<double> lik;
  double best_ever = -1.0;

  ParticleSet ps = input;
  Rng diffuse_rng(substream(seed, "diffuse"));
  double anneal = 1.0;
  for (int it = 0; it < params.iterations; ++it) {
    ilw_iteration(ps, ctx, params, it, anneal, diffuse_rng,
                  substream(seed, "resample", it), lik, result, best_ever,
                  stats);
    anneal *= params.diffusion.decay;
  }
  result.set = std::move(ps);
  return result;
}

}  // namespace sceneest
