#include "sceneest/detector_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sceneest/render.hpp"
#include "sceneest/rng.hpp"

namespace sceneest {

namespace {

int draw_confused_label(Rng& rng, const DetectorNoiseConfig& cfg,
                        int true_label, int label_count) {
  if (cfg.confusion.empty()) return true_label;
  const auto& row = cfg.confusion.at(true_label);
  double u = rng.uniform();
  for (int l = 0; l < label_count; ++l) {
    u -= row[l];
    if (u < 0.0) return l;
  }
  return label_count - 1;
}

// Confidence vector peaked on `label`: Dirichlet with alpha = c*onehot + 1.
// The zero-concentration limit is an exact one-hot.
std::vector<double> sample_confidences(Rng& rng, int label_count, int label,
                                       double concentration) {
  std::vector<double> conf(label_count, 0.0);
  if (concentration <= 0.0) {
    conf[label] = 1.0;
    return conf;
  }
  double sum = 0.0;
  for (int l = 0; l < label_count; ++l) {
    const double alpha = (l == label) ? concentration + 1.0 : 1.0;
    conf[l] = rng.gamma(alpha);
    sum += conf[l];
  }
  for (double& c : conf) c /= sum;
  return conf;
}

std::vector<double> sample_diffuse_confidences(Rng& rng, int label_count,
                                               double concentration) {
  std::vector<double> conf(label_count, 0.0);
  if (concentration <= 0.0) {
    std::fill(conf.begin(), conf.end(), 1.0 / label_count);
    return conf;
  }
  double sum = 0.0;
  for (double& c : conf) {
    c = rng.gamma(1.0);
    sum += c;
  }
  for (double& c : conf) c /= sum;
  return conf;
}

BBox2D clamp_to_image(BBox2D box, const CameraIntrinsics& intr) {
  box.min_x = std::clamp(box.min_x, 0.0, static_cast<double>(intr.width));
  box.max_x = std::clamp(box.max_x, 0.0, static_cast<double>(intr.width));
  box.min_y = std::clamp(box.min_y, 0.0, static_cast<double>(intr.height));
  box.max_y = std::clamp(box.max_y, 0.0, static_cast<double>(intr.height));
  return box;
}

}  // namespace

namespace {

// Axis-aligned bounds of the pixels this instance actually wins in the
// joint z-buffer, plus its unoccluded silhouette size. Real detectors box
// the visible part of an object, so the oracle does too.
struct VisibleRegion {
  int solo_pixels = 0;
  int visible_pixels = 0;
  BBox2D bounds;  // valid only when visible_pixels > 0
};

std::vector<VisibleRegion> visible_regions(
    const std::vector<GroundTruthInstance>& instances, const Camera& camera) {
  const CameraIntrinsics& intr = camera.intr;
  const Pose6D world_to_cam = camera.world_to_camera();

  DepthImage joint(intr.width, intr.height);
  std::vector<DepthImage> solo;
  solo.reserve(instances.size());
  for (const auto& inst : instances) {
    const Pose6D pose_cam = compose(world_to_cam, inst.pose_world);
    solo.push_back(render_depth(*inst.model, pose_cam, intr));
    const DepthImage& s = solo.back();
    for (std::size_t p = 0; p < s.depth.size(); ++p) {
      joint.depth[p] = std::min(joint.depth[p], s.depth[p]);
    }
  }

  std::vector<VisibleRegion> regions(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    VisibleRegion& region = regions[i];
    int min_x = intr.width, min_y = intr.height, max_x = -1, max_y = -1;
    const DepthImage& s = solo[i];
    for (int y = 0; y < intr.height; ++y) {
      for (int x = 0; x < intr.width; ++x) {
        const double d = s.at(x, y);
        if (!DepthImage::is_valid(d)) continue;
        ++region.solo_pixels;
        if (d > joint.at(x, y)) continue;  // occluded here
        ++region.visible_pixels;
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
      }
    }
    if (region.visible_pixels > 0) {
      region.bounds = {static_cast<double>(min_x), static_cast<double>(min_y),
                       static_cast<double>(max_x + 1),
                       static_cast<double>(max_y + 1)};
    }
  }
  return regions;
}

}  // namespace

std::vector<Detection> simulate_detections(
    const std::vector<GroundTruthInstance>& instances, const Camera& camera,
    const DetectorNoiseConfig& cfg, int label_count, std::uint64_t seed) {
  if (!cfg.confusion.empty() &&
      static_cast<int>(cfg.confusion.size()) != label_count) {
    throw std::invalid_argument("confusion matrix size != label count");
  }
  Rng rng(seed);
  std::vector<Detection> detections;
  const std::vector<VisibleRegion> regions = visible_regions(instances, camera);

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const auto& inst = instances[idx];
    const VisibleRegion& region = regions[idx];
    const auto box = project_bbox_world(*inst.model, inst.pose_world, camera);
    if (!box) continue;
    if (region.solo_pixels == 0 ||
        static_cast<double>(region.visible_pixels) / region.solo_pixels <
            cfg.min_visibility) {
      continue;  // mostly hidden: below the detector's visibility floor
    }
    if (rng.uniform() < cfg.miss_rate) continue;

    // Unoccluded objects keep the exact projected box; occlusion clips the
    // box to the visible extent.
    BBox2D jittered = *box;
    if (region.visible_pixels < region.solo_pixels) {
      jittered = {std::max(box->min_x, region.bounds.min_x - 0.5),
                  std::max(box->min_y, region.bounds.min_y - 0.5),
                  std::min(box->max_x, region.bounds.max_x + 0.5),
                  std::min(box->max_y, region.bounds.max_y + 0.5)};
      if (!jittered.valid()) continue;
    }

    if (cfg.bbox_jitter_sigma > 0.0) {
      jittered.min_x += rng.normal(0.0, cfg.bbox_jitter_sigma);
      jittered.min_y += rng.normal(0.0, cfg.bbox_jitter_sigma);
      jittered.max_x += rng.normal(0.0, cfg.bbox_jitter_sigma);
      jittered.max_y += rng.normal(0.0, cfg.bbox_jitter_sigma);
      if (jittered.min_x > jittered.max_x) std::swap(jittered.min_x, jittered.max_x);
      if (jittered.min_y > jittered.max_y) std::swap(jittered.min_y, jittered.max_y);
      jittered = clamp_to_image(jittered, camera.intr);
      if (!jittered.valid()) continue;
    }

    Detection det;
    det.bbox = jittered;
    det.true_object = inst.object_index;
    const int drawn =
        draw_confused_label(rng, cfg, inst.model->label, label_count);
    det.label_conf =
        sample_confidences(rng, label_count, drawn, cfg.confidence_concentration);
    det.box_confidence =
        cfg.confidence_concentration <= 0.0
            ? 1.0
            : rng.beta(0.9 * cfg.confidence_concentration + 1.0,
                       0.1 * cfg.confidence_concentration + 1.0);
    if (det.box_confidence < cfg.min_box_confidence) continue;
    detections.push_back(std::move(det));
  }

  const int n_fp = rng.poisson(cfg.false_positive_rate_per_frame);
  for (int f = 0; f < n_fp; ++f) {
    // Log-uniform scale between 5% and 50% of the image width, placed
    // uniformly; occasionally overlaps real objects.
    const double w = camera.intr.width *
                     std::exp(rng.uniform(std::log(0.05), std::log(0.5)));
    const double h = w * std::exp(rng.normal(0.0, 0.25));
    const double cx = rng.uniform(0.0, camera.intr.width);
    const double cy = rng.uniform(0.0, camera.intr.height);
    Detection det;
    det.bbox = clamp_to_image(
        {cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2}, camera.intr);
    if (!det.bbox.valid()) continue;
    det.true_object = -1;
    det.label_conf =
        sample_diffuse_confidences(rng, label_count, cfg.confidence_concentration);
    det.box_confidence =
        cfg.confidence_concentration <= 0.0
            ? 0.5
            : rng.beta(0.5 * cfg.confidence_concentration,
                       0.5 * cfg.confidence_concentration);
    if (det.box_confidence < cfg.min_box_confidence) continue;
    detections.push_back(std::move(det));
  }
  return detections;
}

std::vector<ThresholdedLabel> threshold_proposals(const Detection& detection,
                                                  double sigma_c) {
  if (detection.label_conf.empty()) {
    throw std::invalid_argument("detection carries no label confidences");
  }
  const double max_conf =
      *std::max_element(detection.label_conf.begin(), detection.label_conf.end());
  const double cutoff = max_conf * sigma_c;
  std::vector<ThresholdedLabel> kept;
  for (int l = 0; l < static_cast<int>(detection.label_conf.size()); ++l) {
    if (detection.label_conf[l] >= cutoff) {
      kept.push_back({l, detection.label_conf[l]});
    }
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const ThresholdedLabel& a, const ThresholdedLabel& b) {
                     if (a.confidence != b.confidence)
                       return a.confidence > b.confidence;
                     return a.label < b.label;
                   });
  return kept;
}

int initial_object_count(
    const std::vector<std::vector<ThresholdedLabel>>& surviving) {
  int k = 0;
  for (const auto& labels : surviving) k += static_cast<int>(labels.size());
  return k;
}

}  // namespace sceneest
