#pragma once

#include <vector>

#include "sceneest/bbox.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// One recognized object: pose, image box and label id.
struct ObjectState {
  Pose6D pose;
  BBox2D bbox;
  int label = -1;
};

// Factored per-object scene estimate; at most one entry per label.
struct SceneEstimate {
  struct Entry {
    ObjectState state;
    double posterior_score = 0.0;
    int track_id = -1;
  };

  std::vector<Entry> entries;

  int k() const { return static_cast<int>(entries.size()); }
  bool empty() const { return entries.empty(); }
};

}  // namespace sceneest
