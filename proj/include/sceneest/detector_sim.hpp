#pragma once

#include <cstdint>
#include <vector>

#include "sceneest/camera.hpp"
#include "sceneest/detection.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// Ground-truth view consumed by the detector oracle.
struct GroundTruthInstance {
  const ObjectModel* model = nullptr;
  Pose6D pose_world;
  int object_index = -1;
};

// Synthetic stand-in for a trained detector/recognizer. For each visible
// instance, with probability 1 - miss_rate emits its projected box jittered
// by the configured sigma, a label drawn through the confusion matrix and a
// confidence vector concentrated on that draw; additionally emits
// Poisson(false_positive_rate_per_frame) spurious boxes with diffuse
// confidences. Deterministic per seed.
std::vector<Detection> simulate_detections(
    const std::vector<GroundTruthInstance>& instances, const Camera& camera,
    const DetectorNoiseConfig& cfg, int label_count, std::uint64_t seed);

// Ratio test: keeps labels whose confidence is at least sigma_c times the
// maximum confidence in the detection. The argmax label always survives.
// Result is sorted by descending confidence (ties by ascending label id).
std::vector<ThresholdedLabel> threshold_proposals(const Detection& detection,
                                                  double sigma_c);

// Number of estimator seeds at t = 0: one per surviving (box, label) pair.
int initial_object_count(
    const std::vector<std::vector<ThresholdedLabel>>& surviving);

}  // namespace sceneest
