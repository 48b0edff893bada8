#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sceneest/aabb.hpp"
#include "sceneest/bbox.hpp"
#include "sceneest/camera.hpp"
#include "sceneest/likelihood.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// n weighted pose hypotheses approximating the pose belief of one object.
struct ParticleSet {
  std::vector<Pose6D> poses;
  std::vector<double> weights;

  int size() const { return static_cast<int>(poses.size()); }
};

// Gaussian mixture over the post-action pose: with weight w1 the target
// lands near the place pose (sigma1), with weight w2 it stays put (sigma2);
// non-target objects jitter with sigma3. rot_sigma* are the axis-angle
// counterparts.
struct ActionModelParams {
  double sigma1 = 0.04;
  double sigma2 = 0.02;
  double sigma3 = 0.01;
  double rot_sigma1 = 0.4;
  double rot_sigma2 = 0.2;
  double rot_sigma3 = 0.1;
  double w1 = 0.8;
  double w2 = 0.2;
};

// A pick-and-place command, issued against a live track.
struct Action {
  int target_track = -1;
  Pose6D pick_pose;
  Pose6D place_pose;
};

// Zero-mean (anisotropic) Gaussian diffusion used by iterated likelihood
// weighting; sigmas shrink by `decay` per iteration.
//
// The observation likelihood is razor-thin along the viewing ray (the
// inlier radius) but smooth laterally, so translation noise is split into a
// lateral sigma and a much smaller sigma along `depth_axis` -- full-size
// kicks along the ray would constantly destroy a lineage's depth lock.
// Each iteration a `wide_fraction` share of particles draws its rotation
// kick from the fixed `wide_rot_sigma` instead of the annealed sigma, so
// distant orientation modes stay reachable after concentration.
struct DiffusionParams {
  double trans_sigma = 0.02;          // meters, lateral
  double depth_sigma = 0.006;         // meters, along depth_axis
  Eigen::Vector3d depth_axis{0, 0, 0};  // world frame; zero = isotropic
  double rot_sigma = 0.5;             // radians
  // For upright-dominant scenes the ambiguous rotation modes differ mostly
  // by spin about the support normal, while tilt is sharply observable.
  // With a nonzero spin_axis, rotation kicks use rot_sigma about that axis
  // and rot_sigma * tilt_ratio about the transverse axes.
  Eigen::Vector3d spin_axis{0, 0, 0};   // world frame; zero = isotropic
  double tilt_ratio = 0.35;
  double decay = 0.9;
  double wide_fraction = 0.1;
  double wide_rot_sigma = 1.5;        // radians
};

struct IlwParams {
  int iterations = 25;
  DiffusionParams diffusion;
  LikelihoodParams likelihood;
  // Resample only when ESS falls below this fraction of n (1 = always).
  // Holding off low-variance resamples protects thin minority modes from
  // sampling extinction before the annealed sigma can separate the modes.
  double resample_ess_fraction = 1.0;
};

struct IlwIterationStat {
  int iteration = 0;
  double ess = 0.0;
  double max_weight = 0.0;
  Pose6D map_pose;
};

struct IlwResult {
  ParticleSet set;
  Pose6D map_pose;
  double map_likelihood = 0.0;
  bool degenerate = false;  // some iteration saw all-zero likelihoods
};

// Uniform belief over the intersection of the box's viewing frustum with
// the workspace volume; orientations uniform over SO(3); weights 1/n.
// nullopt when the intersection is empty (EmptySupport).
std::optional<ParticleSet> init_particles(const BBox2D& box,
                                          const Camera& camera,
                                          const Aabb& workspace, int n,
                                          std::uint64_t seed);

// Multiplies weights by likelihoods and renormalizes. All-zero likelihoods
// reset the weights to uniform and return true (degeneracy flag).
bool reweight(ParticleSet& ps, std::span<const double> likelihoods);

// Systematic (low-variance) resampling; output weights are exactly uniform
// and every output particle is a bitwise copy of an input particle.
ParticleSet resample(const ParticleSet& ps, std::uint64_t seed);

// Highest-weight particle, ties broken by lowest index.
int map_index(const ParticleSet& ps);
Pose6D map_estimate(const ParticleSet& ps);

// Eq. of the factored posterior: detection * recognition * pose belief.
double posterior_score(double box_confidence, double label_confidence,
                       double bel_value);

// Applies the action model to every particle.
void predict(ParticleSet& ps, const Action& action, bool is_target,
             const ActionModelParams& params, std::uint64_t seed);

// Repeats [diffuse -> reweight by likelihood -> resample] against a single
// observation. map_pose / map_likelihood are taken after the final reweight,
// before the final resample. nullopt when the observation crop is empty.
std::optional<IlwResult> iterated_likelihood_weighting(
    const ParticleSet& input, const LikelihoodContext& ctx,
    const IlwParams& params, std::uint64_t seed,
    std::vector<IlwIterationStat>* stats = nullptr);

double effective_sample_size(const ParticleSet& ps);

}  // namespace sceneest
