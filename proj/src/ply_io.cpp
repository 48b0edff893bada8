#include "sceneest/ply_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sceneest/csv.hpp"

namespace sceneest {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_mesh_ply(std::ostream& out, const TriMesh& mesh) {
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar int vertex_indices\n";
  out << "end_header\n";
  for (const auto& v : mesh.vertices) {
    out << fmt_double(v.x()) << ' ' << fmt_double(v.y()) << ' '
        << fmt_double(v.z()) << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
}

void write_mesh_ply(const std::string& path, const TriMesh& mesh) {
  auto out = open_out(path);
  write_mesh_ply(out, mesh);
}

TriMesh read_mesh_ply(std::istream& in) {
  std::string line;
  std::size_t n_verts = 0, n_faces = 0;
  bool saw_magic = false, in_header = true;
  while (in_header && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!saw_magic) {
      if (tok != "ply") throw std::runtime_error("not a PLY file");
      saw_magic = true;
      continue;
    }
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "ascii") throw std::runtime_error("only ASCII PLY supported");
    } else if (tok == "element") {
      std::string kind;
      std::size_t count = 0;
      ls >> kind >> count;
      if (kind == "vertex") n_verts = count;
      else if (kind == "face") n_faces = count;
    } else if (tok == "end_header") {
      in_header = false;
    }
  }
  if (in_header) throw std::runtime_error("PLY header not terminated");

  TriMesh mesh;
  mesh.vertices.reserve(n_verts);
  for (std::size_t i = 0; i < n_verts; ++i) {
    double x, y, z;
    if (!(in >> x >> y >> z)) throw std::runtime_error("truncated PLY vertices");
    mesh.vertices.emplace_back(x, y, z);
  }
  mesh.faces.reserve(n_faces);
  for (std::size_t i = 0; i < n_faces; ++i) {
    int count, a, b, c;
    if (!(in >> count)) throw std::runtime_error("truncated PLY faces");
    if (count != 3) throw std::runtime_error("non-triangular PLY face");
    if (!(in >> a >> b >> c)) throw std::runtime_error("truncated PLY faces");
    mesh.faces.push_back({a, b, c});
  }
  return mesh;
}

TriMesh read_mesh_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_mesh_ply(in);
}

void write_cloud_ply(std::ostream& out, const PointCloud& cloud) {
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.valid_count << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "end_header\n";
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (!cloud.valid[i]) continue;
    const auto& p = cloud.points[i];
    out << fmt_double(p.x()) << ' ' << fmt_double(p.y()) << ' '
        << fmt_double(p.z()) << '\n';
  }
}

void write_cloud_ply(const std::string& path, const PointCloud& cloud) {
  auto out = open_out(path);
  write_cloud_ply(out, cloud);
}

}  // namespace sceneest
