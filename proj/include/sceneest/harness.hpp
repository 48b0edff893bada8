#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sceneest/association.hpp"
#include "sceneest/camera.hpp"
#include "sceneest/detection.hpp"
#include "sceneest/detector_sim.hpp"
#include "sceneest/label.hpp"
#include "sceneest/metrics.hpp"
#include "sceneest/particle_filter.hpp"
#include "sceneest/render.hpp"
#include "sceneest/scene.hpp"
#include "sceneest/world.hpp"

namespace sceneest {

struct IlwDiagRow {
  int track_id = -1;
  IlwIterationStat stat;
};

// Everything the per-frame pipeline needs beyond the observation itself.
struct SumParams {
  double sigma_c = 0.1;             // recognition ratio test
  int particles = 625;
  IlwParams ilw;
  ActionModelParams action_model;
  AssociationParams association;
  double rejection_threshold = 0.02;  // posterior score floor for estimates
  Aabb workspace;
  Camera camera;
  // Known support plane removed from observation crops before likelihood
  // evaluation (tabletop segmentation); -inf disables it.
  double support_plane_z = -std::numeric_limits<double>::infinity();
  double support_margin = 0.005;
  std::vector<IlwDiagRow>* ilw_diag = nullptr;  // optional debug sink
};

struct Observation {
  DepthImage depth;           // noisy observed depth
  PointCloud cloud;           // backprojection of `depth`
  std::vector<Detection> detections;
};

struct TraceEvent {
  int frame = 0;
  std::string event;
  int track_id = -1;
  int det_index = -1;
  int label = -1;
  double score = 0.0;
  Pose6D pose;
};

struct TrialRecord {
  int trial = 0;
  int frame = 0;
  int track_id = -1;
  int object_index = -1;  // resolved ground-truth object, -1 = grabbed air
  int label = -1;
  ActionOutcome outcome = ActionOutcome::kFailInPlace;
};

std::string outcome_name(ActionOutcome outcome);

// Renders the ground-truth scene (table slab plus every object still in the
// workspace), perturbs the depth, backprojects it and runs the detector
// oracle. Deterministic per seed.
Observation observe(const WorldState& world,
                    const std::vector<ObjectModel>& models,
                    const ObjectModel& table_model, const Camera& camera,
                    const DetectorNoiseConfig& detector_cfg,
                    double depth_noise_sigma, std::uint64_t seed);

// One full pipeline step: action-model prediction, confidence thresholding,
// association + lifecycle, per-track iterated likelihood weighting on the
// associated crops, posterior scoring, and the best-track-per-label scene
// estimate (tracks without a current-frame association carry no detection
// factor and stay out of the estimate).
SceneEstimate sum_frame(std::vector<Track>& tracks, int& next_track_id,
                        const Observation& obs,
                        const std::optional<Action>& last_action,
                        const SumParams& params,
                        const std::vector<ObjectModel>& models,
                        std::uint64_t frame_seed,
                        std::vector<TraceEvent>* trace = nullptr);

// Targets the highest-scoring estimate entry (ties: lowest track id);
// pick at its MAP pose, place at the drop pose of its category's bin.
// Throws std::invalid_argument on an empty estimate.
Action sorting_policy(const SceneEstimate& estimate, const WorldState& world,
                      const LabelRegistry& registry);

// Per-frame metric extraction against ground truth.
void collect_frame_metrics(const WorldState& world,
                           const std::vector<ObjectModel>& models,
                           const Camera& camera, const Observation& obs,
                           const std::vector<Track>& tracks,
                           const SceneEstimate& estimate,
                           std::vector<TpRecord>* tp_records, FpStats* fp);

struct SequenceConfig {
  SumParams params;
  DetectorNoiseConfig detector;
  ExecutionNoiseConfig execution;
  double depth_noise_sigma = 0.0;
  int object_count = 5;
  Table table;
  std::array<Bin, 2> bins;
  double tilt_sigma = 0.05;
  double grasp_radius = 0.12;
  int trial_cap = 0;  // 0 -> 3 * object_count
};

struct SequenceResult {
  double completion_ratio = 0.0;
  int trials = 0;
  int errors = 0;
  int frames = 0;
  bool hit_trial_cap = false;
  std::vector<TpRecord> tp_records;
  FpStats fp;
  std::vector<TrialRecord> trial_log;
  std::vector<TraceEvent> trace;
  WorldState final_world;
};

// Full sorting loop: observe -> estimate -> act, until every recognizable
// object is sorted, only off-workspace objects remain, or the trial cap is
// reached (recorded as incomplete, never a failure).
SequenceResult run_sequence(const SequenceConfig& cfg,
                            const std::vector<ObjectModel>& models,
                            const LabelRegistry& registry, std::uint64_t seed);

struct SingleSceneResult {
  std::vector<TpRecord> tp_records;
  FpStats fp;
  SceneEstimate estimate;
  std::vector<TraceEvent> trace;
  WorldState world;
};

// One static frame: generate (or reuse) a scene, observe once, estimate.
// scene_seed fixes the scene; trial_seed drives observation noise and the
// filters, so several trials can rerun the same scene.
SingleSceneResult run_single_scene(const SequenceConfig& cfg,
                                   const std::vector<ObjectModel>& models,
                                   std::uint64_t scene_seed,
                                   std::uint64_t trial_seed);

}  // namespace sceneest
