#pragma once

#include <vector>

#include <Eigen/Core>

namespace sceneest {

// One detection true positive and the pose error of its scene-estimate
// entry; `estimated` is false when the pipeline produced no estimate for it
// (it then counts against accuracy at every bound).
struct TpRecord {
  bool estimated = false;
  double trans_err = 0.0;
  Eigen::Vector3d rpy_err{0.0, 0.0, 0.0};
  double geodesic_err = 0.0;
};

// Spurious-detection bookkeeping for the rejection ratio.
struct FpStats {
  int total = 0;
  int accepted = 0;  // spurious detections that reached a scene estimate

  void merge(const FpStats& o) {
    total += o.total;
    accepted += o.accepted;
  }
};

enum class RotationErrorMode { kPerAxisRpy, kGeodesic };

struct AccuracyGrid {
  std::vector<double> trans_bounds;  // meters
  std::vector<double> rot_bounds;    // radians
  std::vector<double> values;        // trans-major: [ti * n_rot + ri]

  double at(std::size_t ti, std::size_t ri) const {
    return values[ti * rot_bounds.size() + ri];
  }
};

std::vector<double> default_trans_bounds();  // {1, 5, 10, 20} cm
std::vector<double> default_rot_bounds();    // {5, 10, ..., 45} degrees

// Fraction of true positives correctly localized at each bound pair.
// Per-axis mode requires all three wrapped rpy errors under the bound.
AccuracyGrid pose_accuracy(const std::vector<TpRecord>& records,
                           const std::vector<double>& trans_bounds,
                           const std::vector<double>& rot_bounds,
                           RotationErrorMode mode);

// Rejected spurious / total spurious; defined as 1.0 when none occurred.
double fp_rejection_ratio(const FpStats& stats);

struct MetricsReport {
  AccuracyGrid accuracy;
  double fp_rejection = 1.0;
  double completion_ratio = 0.0;
  int manipulation_error_count = 0;
  int manipulation_trial_count = 0;
};

}  // namespace sceneest
