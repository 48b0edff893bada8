#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sceneest/bbox.hpp"
#include "sceneest/detection.hpp"
#include "sceneest/particle_filter.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// One live per-object estimator: label, last associated box, particle set
// and a consecutive-miss counter. The label is fixed for the track's life.
struct Track {
  int id = -1;
  int label = -1;
  BBox2D last_bbox;
  ParticleSet particles;
  int miss_count = 0;

  // Posterior bookkeeping from the most recent frame this track was
  // associated with a detection.
  double last_box_conf = 0.0;
  double last_label_conf = 0.0;
  double last_bel = 0.0;
  double last_score = 0.0;
  int last_det_index = -1;   // index into the current frame's detections
  bool measured = false;     // associated (matched or spawned) this frame
  bool fresh = false;        // spawned this frame, no sequential prior yet
  Pose6D map_pose;
};

struct AssociationParams {
  int termination_patience = 3;   // K consecutive unmatched frames
  double score_threshold = 0.05;  // pairs must score strictly above this
};

struct AssociationResult {
  struct Pair {
    int track_index = -1;
    int det_index = -1;
    double score = 0.0;
  };
  std::vector<Pair> pairs;
  std::vector<int> unmatched_tracks;      // indices into the track list
  std::vector<int> unmatched_detections;  // indices into the detection list
};

// IoU(previous box, detection box) * p(b|z) * p(o|b,z).
double matching_score(const Track& track, const Detection& detection);

// Dense score matrix over live tracks x detections.
std::vector<std::vector<double>> score_matrix(
    const std::vector<Track>& tracks, const std::vector<Detection>& detections);

// Repeatedly takes the global maximum entry of the score matrix, removing
// its row and column, until the matrix is exhausted or the maximum is 0;
// pairs scoring <= score_threshold are then discarded. Ties break toward
// the lowest track id, then the lowest detection index.
AssociationResult greedy_associate(const std::vector<Track>& tracks,
                                   const std::vector<Detection>& detections,
                                   const AssociationParams& params);

struct LifecycleEvent {
  enum Kind { kMatched, kMissed, kSpawned, kTerminated };
  Kind kind;
  int track_id = -1;
  int det_index = -1;
  double score = 0.0;
};

// Builds the initial particle belief for a spawned track; may decline
// (e.g. empty frustum/workspace support), in which case no track is created.
using TrackSpawner =
    std::function<std::optional<ParticleSet>(const Detection&, int det_index,
                                             int label)>;

// Matched tracks reset their miss counter and adopt the matched box;
// unmatched tracks age and are terminated at K consecutive misses; every
// unmatched detection spawns one track per surviving label.
void lifecycle_update(
    std::vector<Track>& tracks, int& next_track_id,
    const std::vector<Detection>& detections, const AssociationResult& assoc,
    const std::vector<std::vector<ThresholdedLabel>>& surviving_labels,
    const TrackSpawner& spawner, const AssociationParams& params,
    std::vector<LifecycleEvent>* events = nullptr);

}  // namespace sceneest
