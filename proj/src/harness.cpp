#include "sceneest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sceneest/rng.hpp"

namespace sceneest {

std::string outcome_name(ActionOutcome outcome) {
  switch (outcome) {
    case ActionOutcome::kSuccess: return "success";
    case ActionOutcome::kFailInPlace: return "fail_in_place";
    case ActionOutcome::kFailFar: return "fail_far";
  }
  return "unknown";
}

Observation observe(const WorldState& world,
                    const std::vector<ObjectModel>& models,
                    const ObjectModel& table_model, const Camera& camera,
                    const DetectorNoiseConfig& detector_cfg,
                    double depth_noise_sigma, std::uint64_t seed) {
  const Pose6D world_to_cam = camera.world_to_camera();

  std::vector<std::pair<const ObjectModel*, Pose6D>> render_list;
  render_list.emplace_back(&table_model,
                           compose(world_to_cam, table_pose(world.table)));
  std::vector<GroundTruthInstance> instances;
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const WorldObject& obj = world.objects[i];
    if (obj.off_workspace) continue;
    render_list.emplace_back(&models[obj.model_index],
                             compose(world_to_cam, obj.pose));
    instances.push_back({&models[obj.model_index], obj.pose,
                         static_cast<int>(i)});
  }

  Observation obs;
  const DepthImage clean = render_scene_depth(render_list, camera.intr);
  obs.depth = add_depth_noise(clean, camera.intr, depth_noise_sigma,
                              substream(seed, "depth"));
  obs.cloud = backproject(obs.depth, camera.intr);
  obs.detections =
      simulate_detections(instances, camera, detector_cfg,
                          static_cast<int>(models.size()),
                          substream(seed, "detect"));
  return obs;
}

SceneEstimate sum_frame(std::vector<Track>& tracks, int& next_track_id,
                        const Observation& obs,
                        const std::optional<Action>& last_action,
                        const SumParams& params,
                        const std::vector<ObjectModel>& models,
                        std::uint64_t frame_seed,
                        std::vector<TraceEvent>* trace) {
  // 1. Action-model prediction.
  if (last_action) {
    for (auto& t : tracks) {
      predict(t.particles, *last_action, t.id == last_action->target_track,
              params.action_model, substream(frame_seed, "predict", t.id));
    }
  }

  // 2. Recognition confidence thresholding.
  std::vector<std::vector<ThresholdedLabel>> surviving(obs.detections.size());
  for (std::size_t d = 0; d < obs.detections.size(); ++d) {
    surviving[d] = threshold_proposals(obs.detections[d], params.sigma_c);
  }

  // 3. Greedy association and track lifecycle.
  const AssociationResult assoc =
      greedy_associate(tracks, obs.detections, params.association);
  std::vector<LifecycleEvent> events;
  const TrackSpawner spawner = [&](const Detection& det, int det_index,
                                   int label) {
    return init_particles(det.bbox, params.camera, params.workspace,
                          params.particles,
                          substream(frame_seed, "spawn",
                                    static_cast<std::uint64_t>(det_index),
                                    static_cast<std::uint64_t>(label)));
  };
  lifecycle_update(tracks, next_track_id, obs.detections, assoc, surviving,
                   spawner, params.association, &events);

  // 4. Measurement update for every track associated this frame.
  for (auto& t : tracks) {
    if (!t.measured) continue;
    const Detection& det = obs.detections[t.last_det_index];
    double bel = 0.0;
    if (auto cropped = crop(obs.cloud, det.bbox)) {
      if (std::isfinite(params.support_plane_z)) {
        remove_support_plane(*cropped, params.camera, params.support_plane_z,
                             params.support_margin);
      }
      LikelihoodContext ctx;
      ctx.model = &models[t.label];
      ctx.observation = &*cropped;
      ctx.box = det.bbox;
      ctx.camera = &params.camera;
      ctx.params = params.ilw.likelihood;
      std::vector<IlwIterationStat> stats;
      if (auto res = iterated_likelihood_weighting(
              t.particles, ctx, params.ilw, substream(frame_seed, "ilw", t.id),
              params.ilw_diag ? &stats : nullptr)) {
        t.particles = std::move(res->set);
        t.map_pose = res->map_pose;
        bel = res->map_likelihood;
      }
      if (params.ilw_diag) {
        for (const auto& s : stats) params.ilw_diag->push_back({t.id, s});
      }
    }
    // 5. Factored posterior score for this estimator.
    t.last_bel = bel;
    t.last_score = posterior_score(t.last_box_conf, t.last_label_conf, bel);
    t.fresh = false;
  }

  // 6. Keep the best-scoring current-frame track per label above the
  // rejection threshold.
  std::map<int, const Track*> best_per_label;
  for (const auto& t : tracks) {
    if (!t.measured || t.last_score <= params.rejection_threshold) continue;
    auto [it, inserted] = best_per_label.try_emplace(t.label, &t);
    if (!inserted) {
      const Track* cur = it->second;
      if (t.last_score > cur->last_score ||
          (t.last_score == cur->last_score && t.id < cur->id)) {
        it->second = &t;
      }
    }
  }
  SceneEstimate estimate;
  for (const auto& [label, track] : best_per_label) {
    estimate.entries.push_back(
        {{track->map_pose, track->last_bbox, label}, track->last_score,
         track->id});
  }

  if (trace) {
    // Frame numbers are stamped by the caller, which owns the frame counter.
    for (const auto& e : events) {
      const char* name = e.kind == LifecycleEvent::kMatched     ? "matched"
                         : e.kind == LifecycleEvent::kMissed    ? "missed"
                         : e.kind == LifecycleEvent::kSpawned   ? "spawned"
                                                                : "terminated";
      trace->push_back({0, name, e.track_id, e.det_index, -1, e.score, {}});
    }
    for (const auto& entry : estimate.entries) {
      trace->push_back({0, "estimate", entry.track_id, -1, entry.state.label,
                        entry.posterior_score, entry.state.pose});
    }
  }
  return estimate;
}

Action sorting_policy(const SceneEstimate& estimate, const WorldState& world,
                      const LabelRegistry& registry) {
  if (estimate.empty()) {
    throw std::invalid_argument("sorting_policy requires a non-empty estimate");
  }
  const SceneEstimate::Entry* best = &estimate.entries.front();
  for (const auto& entry : estimate.entries) {
    if (entry.posterior_score > best->posterior_score ||
        (entry.posterior_score == best->posterior_score &&
         entry.track_id < best->track_id)) {
      best = &entry;
    }
  }
  const Category category = registry.at(best->state.label).category;
  const Bin* bin = &world.bins[0];
  for (const auto& b : world.bins) {
    if (b.category == category) bin = &b;
  }
  Action action;
  action.target_track = best->track_id;
  action.pick_pose = best->state.pose;
  action.place_pose = bin->drop_pose;
  return action;
}

void collect_frame_metrics(const WorldState& world,
                           const std::vector<ObjectModel>& models,
                           const Camera& camera, const Observation& obs,
                           const std::vector<Track>& tracks,
                           const SceneEstimate& estimate,
                           std::vector<TpRecord>* tp_records, FpStats* fp) {
  auto track_by_id = [&](int id) -> const Track* {
    for (const auto& t : tracks) {
      if (t.id == id) return &t;
    }
    return nullptr;
  };

  for (std::size_t d = 0; d < obs.detections.size(); ++d) {
    const Detection& det = obs.detections[d];

    // The best estimate entry whose track was measured against detection d.
    const SceneEstimate::Entry* entry = nullptr;
    for (const auto& e : estimate.entries) {
      const Track* t = track_by_id(e.track_id);
      if (!t || t->last_det_index != static_cast<int>(d)) continue;
      if (!entry || e.posterior_score > entry->posterior_score) entry = &e;
    }

    if (det.true_object < 0) {
      if (fp) {
        ++fp->total;
        if (entry) ++fp->accepted;
      }
      continue;
    }
    if (!tp_records) continue;

    const WorldObject& gt = world.objects[det.true_object];
    const auto gt_box =
        project_bbox_world(models[gt.model_index], gt.pose, camera);
    if (!gt_box || iou(det.bbox, *gt_box) <= 0.5) continue;  // not a TP

    TpRecord rec;
    if (entry) {
      rec.estimated = true;
      rec.trans_err =
          (entry->state.pose.translation - gt.pose.translation).norm();
      // Depth-only observations cannot tell symmetry-equivalent orientations
      // apart, so the error is taken against the nearest equivalent truth.
      const Eigen::Quaterniond equivalent_truth = closest_equivalent_orientation(
          entry->state.pose.orientation, gt.pose.orientation,
          models[gt.model_index].symmetry);
      rec.rpy_err =
          rpy_error(entry->state.pose.orientation, equivalent_truth);
      rec.geodesic_err =
          rotation_angle(entry->state.pose.orientation, equivalent_truth);
    }
    tp_records->push_back(rec);
  }
}

namespace {

void stamp_frame(std::vector<TraceEvent>& trace, std::size_t from, int frame) {
  for (std::size_t i = from; i < trace.size(); ++i) trace[i].frame = frame;
}

}  // namespace

SequenceResult run_sequence(const SequenceConfig& cfg,
                            const std::vector<ObjectModel>& models,
                            const LabelRegistry& registry,
                            std::uint64_t seed) {
  SequenceResult result;
  WorldState world =
      generate_scene(models, cfg.object_count, cfg.table, cfg.bins,
                     cfg.tilt_sigma, substream(seed, "scene"));
  const ObjectModel table_model = make_table_model(cfg.table);
  const int total = cfg.object_count;
  const int trial_cap =
      cfg.trial_cap > 0 ? cfg.trial_cap : 3 * cfg.object_count;
  const int frame_cap = 2 * trial_cap + 6;
  const int idle_cap = cfg.params.association.termination_patience + 2;

  std::vector<Track> tracks;
  int next_track_id = 0;
  std::optional<Action> pending_action;
  int idle_frames = 0;

  while (true) {
    if (world.count_on_table() == 0) break;
    if (result.trials >= trial_cap || result.frames >= frame_cap) {
      result.hit_trial_cap = true;
      break;
    }

    const std::uint64_t frame_seed =
        substream(seed, "frame", static_cast<std::uint64_t>(result.frames));
    const Observation obs =
        observe(world, models, table_model, cfg.params.camera, cfg.detector,
                cfg.depth_noise_sigma, frame_seed);
    const std::size_t trace_mark = result.trace.size();
    const SceneEstimate estimate =
        sum_frame(tracks, next_track_id, obs, pending_action, cfg.params,
                  models, frame_seed, &result.trace);
    stamp_frame(result.trace, trace_mark, result.frames);
    collect_frame_metrics(world, models, cfg.params.camera, obs, tracks,
                          estimate, &result.tp_records, &result.fp);
    pending_action.reset();
    ++result.frames;

    if (estimate.empty()) {
      ++idle_frames;
      if (idle_frames > idle_cap) {
        result.hit_trial_cap = true;
        break;
      }
      continue;
    }
    idle_frames = 0;

    const Action action = sorting_policy(estimate, world, registry);
    const int target =
        resolve_target(world, action.pick_pose, cfg.grasp_radius);
    const ActionOutcome outcome = execute_action(
        world, action, target, cfg.execution, models,
        substream(seed, "exec", static_cast<std::uint64_t>(result.trials)));

    TrialRecord trial;
    trial.trial = result.trials;
    trial.frame = result.frames - 1;
    trial.track_id = action.target_track;
    trial.object_index = target;
    trial.label = target >= 0 ? world.objects[target].model_index : -1;
    trial.outcome = outcome;
    result.trial_log.push_back(trial);
    result.trace.push_back({result.frames - 1, "action:" + outcome_name(outcome),
                            action.target_track, -1, trial.label, 0.0,
                            action.pick_pose});

    ++result.trials;
    if (outcome != ActionOutcome::kSuccess) ++result.errors;
    pending_action = action;
  }

  result.completion_ratio =
      static_cast<double>(world.count_sorted()) / total;
  result.final_world = std::move(world);
  return result;
}

SingleSceneResult run_single_scene(const SequenceConfig& cfg,
                                   const std::vector<ObjectModel>& models,
                                   std::uint64_t scene_seed,
                                   std::uint64_t trial_seed) {
  SingleSceneResult result;
  result.world = generate_scene(models, cfg.object_count, cfg.table, cfg.bins,
                                cfg.tilt_sigma, substream(scene_seed, "scene"));
  const ObjectModel table_model = make_table_model(cfg.table);

  std::vector<Track> tracks;
  int next_track_id = 0;
  const std::uint64_t frame_seed = substream(trial_seed, "frame", 0);
  const Observation obs =
      observe(result.world, models, table_model, cfg.params.camera,
              cfg.detector, cfg.depth_noise_sigma, frame_seed);
  result.estimate = sum_frame(tracks, next_track_id, obs, std::nullopt,
                              cfg.params, models, frame_seed, &result.trace);
  collect_frame_metrics(result.world, models, cfg.params.camera, obs, tracks,
                        result.estimate, &result.tp_records, &result.fp);
  return result;
}

}  // namespace sceneest
