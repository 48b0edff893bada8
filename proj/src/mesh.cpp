#include "sceneest/mesh.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sceneest {

namespace {

// Emits the 12 triangles of an axis-aligned box [lo, hi] into `mesh`.
void append_box(TriMesh& mesh, const Eigen::Vector3d& lo,
                const Eigen::Vector3d& hi) {
  const int base = static_cast<int>(mesh.vertices.size());
  for (int corner = 0; corner < 8; ++corner) {
    mesh.vertices.emplace_back(corner & 1 ? hi.x() : lo.x(),
                               corner & 2 ? hi.y() : lo.y(),
                               corner & 4 ? hi.z() : lo.z());
  }
  static constexpr std::array<std::array<int, 3>, 12> kFaces = {{
      {0, 2, 1}, {1, 2, 3},  // z = lo
      {4, 5, 6}, {5, 7, 6},  // z = hi
      {0, 1, 4}, {1, 5, 4},  // y = lo
      {2, 6, 3}, {3, 6, 7},  // y = hi
      {0, 4, 2}, {2, 4, 6},  // x = lo
      {1, 3, 5}, {3, 7, 5},  // x = hi
  }};
  for (const auto& f : kFaces) {
    mesh.faces.push_back({base + f[0], base + f[1], base + f[2]});
  }
}

}  // namespace

ObjectModel make_object_model(int label, TriMesh mesh) {
  ObjectModel model;
  model.label = label;
  double r2 = 0.0;
  for (const auto& v : mesh.vertices) r2 = std::max(r2, v.squaredNorm());
  model.bounding_radius = std::sqrt(r2) * (1.0 + 1e-12);
  model.mesh = std::move(mesh);
  return model;
}

TriMesh make_box(double size_x, double size_y, double size_z) {
  TriMesh mesh;
  const Eigen::Vector3d half(size_x / 2, size_y / 2, size_z / 2);
  append_box(mesh, -half, half);
  return mesh;
}

TriMesh make_cylinder(double radius, double height, int segments) {
  TriMesh mesh;
  const double h = height / 2;
  const int top_center = 0;
  const int bottom_center = 1;
  mesh.vertices.emplace_back(0, 0, h);
  mesh.vertices.emplace_back(0, 0, -h);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    mesh.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), h);
    mesh.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), -h);
  }
  for (int i = 0; i < segments; ++i) {
    const int t0 = 2 + 2 * i;
    const int b0 = t0 + 1;
    const int t1 = 2 + 2 * ((i + 1) % segments);
    const int b1 = t1 + 1;
    mesh.faces.push_back({top_center, t0, t1});
    mesh.faces.push_back({bottom_center, b1, b0});
    mesh.faces.push_back({t0, b0, t1});
    mesh.faces.push_back({t1, b0, b1});
  }
  return mesh;
}

TriMesh make_l_shape(double arm_x, double arm_y, double width, double height) {
  // Arms along +x and +y sharing the corner block at the origin corner;
  // recentered so the overall bounding box is centered at the origin.
  TriMesh mesh;
  const Eigen::Vector3d shift(-arm_x / 2, -arm_y / 2, -height / 2);
  append_box(mesh, Eigen::Vector3d(0, 0, 0) + shift,
             Eigen::Vector3d(arm_x, width, height) + shift);
  append_box(mesh, Eigen::Vector3d(0, width, 0) + shift,
             Eigen::Vector3d(width, arm_y, height) + shift);
  return mesh;
}

std::vector<Eigen::Quaterniond> box_symmetries(double size_x, double size_y,
                                               double size_z) {
  const std::array<double, 3> dims = {size_x, size_y, size_z};
  std::vector<Eigen::Quaterniond> result;
  // Signed axis permutations with determinant +1 that preserve side lengths.
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& perm : perms) {
    bool preserves = true;
    for (int axis = 0; axis < 3; ++axis) {
      if (std::abs(dims[perm[axis]] - dims[axis]) > 1e-12) preserves = false;
    }
    if (!preserves) continue;
    for (int signs = 0; signs < 8; ++signs) {
      Eigen::Matrix3d rot = Eigen::Matrix3d::Zero();
      for (int axis = 0; axis < 3; ++axis) {
        rot(axis, perm[axis]) = (signs >> axis) & 1 ? -1.0 : 1.0;
      }
      if (rot.determinant() < 0.5) continue;
      if (rot.isIdentity(1e-12)) continue;
      result.emplace_back(rot);
    }
  }
  return result;
}

ModelSymmetry cylinder_symmetry() {
  ModelSymmetry sym;
  sym.discrete.emplace_back(
      Eigen::AngleAxisd(std::numbers::pi, Eigen::Vector3d::UnitX()));
  sym.revolution_axis = Eigen::Vector3d::UnitZ();
  return sym;
}

Eigen::Quaterniond closest_equivalent_orientation(
    const Eigen::Quaterniond& estimate, const Eigen::Quaterniond& truth,
    const ModelSymmetry& symmetry) {
  std::vector<Eigen::Quaterniond> candidates;
  candidates.push_back(truth);
  for (const auto& s : symmetry.discrete) candidates.push_back(truth * s);

  Eigen::Quaterniond best = truth;
  double best_dot = -1.0;
  for (Eigen::Quaterniond cand : candidates) {
    if (symmetry.revolution_axis) {
      // Choose the revolution angle maximizing |<estimate, cand * R(a)>|:
      // the dot is c1 cos(a/2) + c2 sin(a/2), maximal at a/2 = atan2(c2, c1).
      const Eigen::Vector3d& axis = *symmetry.revolution_axis;
      const Eigen::Quaterniond pure(0.0, axis.x(), axis.y(), axis.z());
      const Eigen::Quaterniond cand_a = cand * pure;
      const double c1 = estimate.coeffs().dot(cand.coeffs());
      const double c2 = estimate.coeffs().dot(cand_a.coeffs());
      const double half = std::atan2(c2, c1);
      const Eigen::Quaterniond spin(std::cos(half), std::sin(half) * axis.x(),
                                    std::sin(half) * axis.y(),
                                    std::sin(half) * axis.z());
      cand = (cand * spin).normalized();
    }
    const double d = std::abs(estimate.coeffs().dot(cand.coeffs()));
    if (d > best_dot) {
      best_dot = d;
      best = cand;
    }
  }
  return best;
}

TriMesh transformed(const TriMesh& mesh, const Pose6D& pose) {
  TriMesh out;
  out.vertices.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) out.vertices.push_back(pose.apply(v));
  out.faces = mesh.faces;
  return out;
}

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double min_z_under_rotation(const TriMesh& mesh,
                            const Eigen::Quaterniond& orientation) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& v : mesh.vertices) lo = std::min(lo, (orientation * v).z());
  return lo;
}

std::vector<std::string> validate_model(const ObjectModel& model) {
  std::vector<std::string> issues;
  if (model.mesh.empty()) {
    issues.push_back("mesh is empty");
    return issues;
  }
  const int nv = static_cast<int>(model.mesh.vertices.size());
  for (const auto& f : model.mesh.faces) {
    for (int idx : f) {
      if (idx < 0 || idx >= nv) {
        issues.push_back("face index out of range");
        return issues;
      }
    }
    const double area = triangle_area(model.mesh.vertices[f[0]],
                                      model.mesh.vertices[f[1]],
                                      model.mesh.vertices[f[2]]);
    if (area <= 1e-12) issues.push_back("degenerate triangle (area <= 1e-12)");
  }
  for (const auto& v : model.mesh.vertices) {
    if (v.norm() > model.bounding_radius + 1e-12) {
      issues.push_back("vertex outside declared bounding radius");
      break;
    }
  }
  return issues;
}

}  // namespace sceneest
