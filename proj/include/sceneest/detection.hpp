#pragma once

#include <vector>

#include "sceneest/bbox.hpp"

namespace sceneest {

// One detector proposal: an image box with a box confidence p(b|z) and a
// per-label confidence vector p(o|b,z) indexed by label id.
//
// true_object is simulator ground truth (index of the world object that
// produced this detection, -1 for a spurious one). It exists only for
// metric bookkeeping; inference code never reads it.
struct Detection {
  BBox2D bbox;
  double box_confidence = 1.0;
  std::vector<double> label_conf;
  int true_object = -1;
};

// Knobs of the synthetic detector oracle.
struct DetectorNoiseConfig {
  double miss_rate = 0.0;
  double false_positive_rate_per_frame = 0.0;  // expected count, Poisson
  double bbox_jitter_sigma = 0.0;              // pixels
  // Row-stochastic label confusion matrix; empty means identity.
  std::vector<std::vector<double>> confusion;
  // Dirichlet-style sharpness of sampled confidence vectors. 0 is the
  // deterministic limit: one-hot labels and unit box confidence.
  double confidence_concentration = 0.0;
  // Optional box-confidence floor; proposals below it are dropped at
  // emission. Defaults to 0 (disabled).
  double min_box_confidence = 0.0;
  // Objects whose visible silhouette falls below this fraction of their
  // unoccluded silhouette are not detected; occlusion-clipped objects get
  // boxes around the visible part, like a detector trained on images would.
  double min_visibility = 0.25;
};

struct ThresholdedLabel {
  int label = -1;
  double confidence = 0.0;
};

}  // namespace sceneest
