#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "sceneest/pose.hpp"

namespace sceneest {

struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;

  bool empty() const { return vertices.empty() || faces.empty(); }
};

// Proper rotations mapping the model onto itself. Depth-only observations
// cannot distinguish symmetry-equivalent orientations, so pose-error
// metrics evaluate against the nearest equivalent ground truth.
struct ModelSymmetry {
  std::vector<Eigen::Quaterniond> discrete;  // excluding the identity
  std::optional<Eigen::Vector3d> revolution_axis;  // object-frame unit axis
};

// A rigid object: label id plus its triangle mesh in the object frame,
// with the mesh's bounding radius about the object origin.
struct ObjectModel {
  int label = -1;
  TriMesh mesh;
  double bounding_radius = 0.0;
  ModelSymmetry symmetry;
};

ObjectModel make_object_model(int label, TriMesh mesh);

// Rotation group of an axis-aligned box with the given side lengths
// (identity excluded): the signed axis permutations that map equal sides to
// equal sides.
std::vector<Eigen::Quaterniond> box_symmetries(double size_x, double size_y,
                                               double size_z);

// End-over-end flip of a capped cylinder; paired with revolution about z.
ModelSymmetry cylinder_symmetry();

// The symmetry-equivalent of `truth` closest to `estimate` (maximal
// |quaternion dot|); revolution axes are factored out in closed form.
Eigen::Quaterniond closest_equivalent_orientation(
    const Eigen::Quaterniond& estimate, const Eigen::Quaterniond& truth,
    const ModelSymmetry& symmetry);

// Procedural primitives, centered at the object origin.
TriMesh make_box(double size_x, double size_y, double size_z);
TriMesh make_cylinder(double radius, double height, int segments = 24);
// Two rectangular arms joined at a corner; arm_x/arm_y are the outer arm
// lengths, width the arm cross-section, height the extrusion in z.
TriMesh make_l_shape(double arm_x, double arm_y, double width, double height);

TriMesh transformed(const TriMesh& mesh, const Pose6D& pose);

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c);

// Lowest z over the mesh vertices after rotating by `orientation`.
double min_z_under_rotation(const TriMesh& mesh,
                            const Eigen::Quaterniond& orientation);

// Structural checks: non-empty, valid indices, non-degenerate triangles
// (area > 1e-12 m^2), vertices inside the declared bounding radius.
// Returns human-readable violations; empty means valid.
std::vector<std::string> validate_model(const ObjectModel& model);

}  // namespace sceneest
