#include "sceneest/metrics.hpp"

#include <numbers>

namespace sceneest {

std::vector<double> default_trans_bounds() { return {0.01, 0.05, 0.10, 0.20}; }

std::vector<double> default_rot_bounds() {
  std::vector<double> bounds;
  for (int deg = 5; deg <= 45; deg += 5) {
    bounds.push_back(deg * std::numbers::pi / 180.0);
  }
  return bounds;
}

AccuracyGrid pose_accuracy(const std::vector<TpRecord>& records,
                           const std::vector<double>& trans_bounds,
                           const std::vector<double>& rot_bounds,
                           RotationErrorMode mode) {
  AccuracyGrid grid;
  grid.trans_bounds = trans_bounds;
  grid.rot_bounds = rot_bounds;
  grid.values.assign(trans_bounds.size() * rot_bounds.size(), 0.0);
  if (records.empty()) return grid;

  for (std::size_t ti = 0; ti < trans_bounds.size(); ++ti) {
    for (std::size_t ri = 0; ri < rot_bounds.size(); ++ri) {
      int correct = 0;
      for (const auto& r : records) {
        if (!r.estimated) continue;
        if (r.trans_err >= trans_bounds[ti]) continue;
        const bool rot_ok =
            mode == RotationErrorMode::kPerAxisRpy
                ? (r.rpy_err.x() < rot_bounds[ri] &&
                   r.rpy_err.y() < rot_bounds[ri] &&
                   r.rpy_err.z() < rot_bounds[ri])
                : r.geodesic_err < rot_bounds[ri];
        if (rot_ok) ++correct;
      }
      grid.values[ti * rot_bounds.size() + ri] =
          static_cast<double>(correct) / records.size();
    }
  }
  return grid;
}

double fp_rejection_ratio(const FpStats& stats) {
  if (stats.total == 0) return 1.0;
  return static_cast<double>(stats.total - stats.accepted) / stats.total;
}

}  // namespace sceneest
