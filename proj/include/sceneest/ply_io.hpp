#pragma once

#include <iosfwd>
#include <string>

#include "sceneest/mesh.hpp"
#include "sceneest/point_cloud.hpp"

namespace sceneest {

// ASCII PLY, vertex list plus triangular faces.
void write_mesh_ply(std::ostream& out, const TriMesh& mesh);
void write_mesh_ply(const std::string& path, const TriMesh& mesh);

// Throws std::runtime_error on malformed input or non-triangular faces.
TriMesh read_mesh_ply(std::istream& in);
TriMesh read_mesh_ply(const std::string& path);

// Valid points only, as an ASCII PLY vertex list.
void write_cloud_ply(std::ostream& out, const PointCloud& cloud);
void write_cloud_ply(const std::string& path, const PointCloud& cloud);

}  // namespace sceneest
