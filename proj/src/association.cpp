#include "sceneest/association.hpp"

#include <algorithm>

namespace sceneest {

double matching_score(const Track& track, const Detection& detection) {
  const double label_conf =
      track.label >= 0 &&
              track.label < static_cast<int>(detection.label_conf.size())
          ? detection.label_conf[track.label]
          : 0.0;
  return iou(track.last_bbox, detection.bbox) * detection.box_confidence *
         label_conf;
}

std::vector<std::vector<double>> score_matrix(
    const std::vector<Track>& tracks,
    const std::vector<Detection>& detections) {
  std::vector<std::vector<double>> matrix(
      tracks.size(), std::vector<double>(detections.size(), 0.0));
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    for (std::size_t j = 0; j < detections.size(); ++j) {
      matrix[i][j] = matching_score(tracks[i], detections[j]);
    }
  }
  return matrix;
}

AssociationResult greedy_associate(const std::vector<Track>& tracks,
                                   const std::vector<Detection>& detections,
                                   const AssociationParams& params) {
  const auto matrix = score_matrix(tracks, detections);
  const int nt = static_cast<int>(tracks.size());
  const int nd = static_cast<int>(detections.size());
  std::vector<bool> row_used(nt, false), col_used(nd, false);

  AssociationResult result;
  for (int round = 0; round < std::min(nt, nd); ++round) {
    int best_i = -1, best_j = -1;
    double best = 0.0;
    for (int i = 0; i < nt; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < nd; ++j) {
        if (col_used[j]) continue;
        const double s = matrix[i][j];
        if (s <= 0.0) continue;
        bool take = false;
        if (best_i < 0 || s > best) {
          take = true;
        } else if (s == best) {
          take = tracks[i].id < tracks[best_i].id ||
                 (tracks[i].id == tracks[best_i].id && j < best_j);
        }
        if (take) {
          best = s;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0) break;  // max is 0: no spatial evidence left
    row_used[best_i] = true;
    col_used[best_j] = true;
    result.pairs.push_back({best_i, best_j, best});
  }

  // Keep only associations scoring strictly above the threshold.
  std::vector<AssociationResult::Pair> kept;
  for (const auto& p : result.pairs) {
    if (p.score > params.score_threshold) {
      kept.push_back(p);
    } else {
      row_used[p.track_index] = false;
      col_used[p.det_index] = false;
    }
  }
  result.pairs = std::move(kept);

  for (int i = 0; i < nt; ++i) {
    if (!row_used[i]) result.unmatched_tracks.push_back(i);
  }
  for (int j = 0; j < nd; ++j) {
    if (!col_used[j]) result.unmatched_detections.push_back(j);
  }
  return result;
}

void lifecycle_update(
    std::vector<Track>& tracks, int& next_track_id,
    const std::vector<Detection>& detections, const AssociationResult& assoc,
    const std::vector<std::vector<ThresholdedLabel>>& surviving_labels,
    const TrackSpawner& spawner, const AssociationParams& params,
    std::vector<LifecycleEvent>* events) {
  auto log = [&](LifecycleEvent e) {
    if (events) events->push_back(e);
  };

  for (auto& t : tracks) {
    t.measured = false;
    t.last_det_index = -1;
  }

  for (const auto& p : assoc.pairs) {
    Track& t = tracks[p.track_index];
    const Detection& d = detections[p.det_index];
    t.miss_count = 0;
    t.last_bbox = d.bbox;
    t.measured = true;
    t.last_det_index = p.det_index;
    t.last_box_conf = d.box_confidence;
    t.last_label_conf =
        t.label < static_cast<int>(d.label_conf.size()) ? d.label_conf[t.label]
                                                        : 0.0;
    log({LifecycleEvent::kMatched, t.id, p.det_index, p.score});
  }

  for (int i : assoc.unmatched_tracks) {
    Track& t = tracks[i];
    ++t.miss_count;
    log({LifecycleEvent::kMissed, t.id, -1, 0.0});
  }

  std::erase_if(tracks, [&](const Track& t) {
    if (t.miss_count >= params.termination_patience) {
      log({LifecycleEvent::kTerminated, t.id, -1, 0.0});
      return true;
    }
    return false;
  });

  for (int j : assoc.unmatched_detections) {
    const Detection& d = detections[j];
    for (const auto& tl : surviving_labels[j]) {
      auto particles = spawner(d, j, tl.label);
      if (!particles) continue;  // no pose support under this box
      Track t;
      t.id = next_track_id++;
      t.label = tl.label;
      t.last_bbox = d.bbox;
      t.particles = std::move(*particles);
      t.measured = true;
      t.fresh = true;
      t.last_det_index = j;
      t.last_box_conf = d.box_confidence;
      t.last_label_conf = tl.confidence;
      tracks.push_back(std::move(t));
      log({LifecycleEvent::kSpawned, tracks.back().id, j, 0.0});
    }
  }
}

}  // namespace sceneest
