#pragma once

// Independent reference implementations used to freeze expected values in
// tests. These deliberately avoid the library's own code paths: matrix
// algebra for pose composition, grid counting for IoU, direct geometry for
// point-to-mesh distance, and a sort-based greedy matcher.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "sceneest/bbox.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/pose.hpp"

namespace oracle {

// Pose composition via homogeneous 4x4 matrix product.
inline Eigen::Matrix4d pose_matrix(const sceneest::Pose6D& p) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = p.orientation.toRotationMatrix();
  m.topRightCorner<3, 1>() = p.translation;
  return m;
}

inline Eigen::Matrix4d compose_matrices(const sceneest::Pose6D& a,
                                        const sceneest::Pose6D& b) {
  return pose_matrix(a) * pose_matrix(b);
}

// Discrete counting IoU: samples a regular grid over the union's bounding
// box and counts membership. Resolution ~ samples_per_axis^2 points.
inline double grid_iou(const sceneest::BBox2D& a, const sceneest::BBox2D& b,
                       int samples_per_axis = 3000) {
  const double lo_x = std::min(a.min_x, b.min_x);
  const double hi_x = std::max(a.max_x, b.max_x);
  const double lo_y = std::min(a.min_y, b.min_y);
  const double hi_y = std::max(a.max_y, b.max_y);
  long inter = 0, uni = 0;
  for (int i = 0; i < samples_per_axis; ++i) {
    const double x = lo_x + (hi_x - lo_x) * (i + 0.5) / samples_per_axis;
    for (int j = 0; j < samples_per_axis; ++j) {
      const double y = lo_y + (hi_y - lo_y) * (j + 0.5) / samples_per_axis;
      const bool in_a = x >= a.min_x && x < a.max_x && y >= a.min_y && y < a.max_y;
      const bool in_b = x >= b.min_x && x < b.max_x && y >= b.min_y && y < b.max_y;
      inter += (in_a && in_b) ? 1 : 0;
      uni += (in_a || in_b) ? 1 : 0;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

// Distance from a point to a triangle: plane projection clamped to the
// triangle, else nearest edge segment.
inline double point_segment_distance(const Eigen::Vector3d& p,
                                     const Eigen::Vector3d& a,
                                     const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double t =
      std::clamp(ab.dot(p - a) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

inline double point_triangle_distance(const Eigen::Vector3d& p,
                                      const Eigen::Vector3d& a,
                                      const Eigen::Vector3d& b,
                                      const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a, ac = c - a;
  const Eigen::Vector3d n = ab.cross(ac);
  const double n2 = n.squaredNorm();
  if (n2 > 0.0) {
    // Barycentric coordinates of the plane projection.
    const Eigen::Vector3d ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    const double a11 = ab.squaredNorm(), a22 = ac.squaredNorm(), a12 = ab.dot(ac);
    const double det = a11 * a22 - a12 * a12;
    if (det > 0.0) {
      const double v = (a22 * d1 - a12 * d2) / det;
      const double w = (a11 * d2 - a12 * d1) / det;
      if (v >= 0.0 && w >= 0.0 && v + w <= 1.0) {
        return std::abs(n.dot(ap)) / std::sqrt(n2);
      }
    }
  }
  return std::min({point_segment_distance(p, a, b),
                   point_segment_distance(p, b, c),
                   point_segment_distance(p, c, a)});
}

inline double point_mesh_distance(const Eigen::Vector3d& p,
                                  const sceneest::TriMesh& mesh) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : mesh.faces) {
    best = std::min(best, point_triangle_distance(p, mesh.vertices[f[0]],
                                                  mesh.vertices[f[1]],
                                                  mesh.vertices[f[2]]));
  }
  return best;
}

// Reference greedy matcher: sort all positive entries (score desc, row
// asc, col asc), accept greedily, then drop scores <= threshold.
struct GreedyPair {
  int row, col;
  double score;
};

inline std::vector<GreedyPair> greedy_reference(
    const std::vector<std::vector<double>>& score, double threshold) {
  std::vector<GreedyPair> entries;
  for (int i = 0; i < static_cast<int>(score.size()); ++i) {
    for (int j = 0; j < static_cast<int>(score[i].size()); ++j) {
      if (score[i][j] > 0.0) entries.push_back({i, j, score[i][j]});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const GreedyPair& a, const GreedyPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.row != b.row) return a.row < b.row;
              return a.col < b.col;
            });
  std::vector<bool> row_used(score.size(), false);
  std::vector<bool> col_used(score.empty() ? 0 : score[0].size(), false);
  std::vector<GreedyPair> result;
  for (const auto& e : entries) {
    if (row_used[e.row] || col_used[e.col]) continue;
    row_used[e.row] = true;
    col_used[e.col] = true;
    if (e.score > threshold) result.push_back(e);
  }
  return result;
}

// E[theta] and Var[theta] of the rotation angle of a uniform random
// rotation, by quadrature over the density (1 - cos t) / pi on [0, pi].
inline void uniform_rotation_angle_moments(double* mean, double* variance) {
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = M_PI * (i + 0.5) / n;
    const double density = (1.0 - std::cos(t)) / M_PI;
    m1 += t * density;
    m2 += t * t * density;
  }
  m1 *= M_PI / n;
  m2 *= M_PI / n;
  *mean = m1;
  *variance = m2 - m1 * m1;
}

}  // namespace oracle
