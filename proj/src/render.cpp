#include "sceneest/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sceneest/rng.hpp"

namespace sceneest {

namespace {

struct ScreenVert {
  double u, v, invz;
};

// Directed edge function: E(p) = dx*(p.y - ay) - dy*(p.x - ax).
// With vertices oriented so the triangle's interior is E > 0 on all three
// edges, a boundary pixel (E == 0) belongs to the triangle only when the
// edge is a top or left edge.
struct Edge {
  double dx, dy, ax, ay;

  double eval(double px, double py) const {
    return dx * (py - ay) - dy * (px - ax);
  }
  bool top_left() const { return (dy == 0.0 && dx > 0.0) || dy < 0.0; }
  bool covers(double w) const { return w > 0.0 || (w == 0.0 && top_left()); }
};

void raster_triangle(const ScreenVert& a, const ScreenVert& b,
                     const ScreenVert& c, const CameraIntrinsics& intr,
                     const PixelRect& rect, DepthImage& buf) {
  ScreenVert v0 = a, v1 = b, v2 = c;
  double area2 = (v1.u - v0.u) * (v2.v - v0.v) - (v1.v - v0.v) * (v2.u - v0.u);
  if (area2 == 0.0) return;
  if (area2 < 0.0) {
    std::swap(v1, v2);
    area2 = -area2;
  }

  const double min_u = std::min({v0.u, v1.u, v2.u});
  const double max_u = std::max({v0.u, v1.u, v2.u});
  const double min_v = std::min({v0.v, v1.v, v2.v});
  const double max_v = std::max({v0.v, v1.v, v2.v});

  const int x_begin = std::max(rect.x0, static_cast<int>(std::ceil(min_u)));
  const int x_end =
      std::min(rect.x1, static_cast<int>(std::floor(max_u)) + 1);
  const int y_begin = std::max(rect.y0, static_cast<int>(std::ceil(min_v)));
  const int y_end =
      std::min(rect.y1, static_cast<int>(std::floor(max_v)) + 1);
  if (x_begin >= x_end || y_begin >= y_end) return;

  const Edge e01{v1.u - v0.u, v1.v - v0.v, v0.u, v0.v};
  const Edge e12{v2.u - v1.u, v2.v - v1.v, v1.u, v1.v};
  const Edge e20{v0.u - v2.u, v0.v - v2.v, v2.u, v2.v};

  for (int py = y_begin; py < y_end; ++py) {
    for (int px = x_begin; px < x_end; ++px) {
      const double x = static_cast<double>(px);
      const double y = static_cast<double>(py);
      const double w01 = e01.eval(x, y);
      const double w12 = e12.eval(x, y);
      const double w20 = e20.eval(x, y);
      if (!e01.covers(w01) || !e12.covers(w12) || !e20.covers(w20)) continue;
      // Screen-space barycentrics interpolate 1/z exactly.
      const double invz =
          (w12 * v0.invz + w20 * v1.invz + w01 * v2.invz) / area2;
      if (invz <= 0.0) continue;
      const double z = 1.0 / invz;
      if (z <= intr.z_near || z >= intr.z_far) continue;
      double& cell = buf.at(px - buf.origin_x, py - buf.origin_y);
      if (z < cell) cell = z;
    }
  }
}

}  // namespace

PixelRect full_rect(const CameraIntrinsics& intr) {
  return {0, 0, intr.width, intr.height};
}

PixelRect pixel_rect_of(const BBox2D& box, const CameraIntrinsics& intr) {
  PixelRect r;
  r.x0 = std::max(0, static_cast<int>(std::ceil(box.min_x)));
  r.y0 = std::max(0, static_cast<int>(std::ceil(box.min_y)));
  r.x1 = std::min(intr.width, static_cast<int>(std::ceil(box.max_x)));
  r.y1 = std::min(intr.height, static_cast<int>(std::ceil(box.max_y)));
  return r;
}

void rasterize_into(const TriMesh& mesh, const Pose6D& pose_cam,
                    const CameraIntrinsics& intr, DepthImage& buf) {
  const PixelRect rect{buf.origin_x, buf.origin_y, buf.origin_x + buf.width,
                       buf.origin_y + buf.height};
  std::vector<Eigen::Vector3d> cam_verts;
  cam_verts.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) cam_verts.push_back(pose_cam.apply(v));

  std::array<Eigen::Vector3d, 4> poly;
  for (const auto& face : mesh.faces) {
    const std::array<Eigen::Vector3d, 3> tri = {cam_verts[face[0]],
                                                cam_verts[face[1]],
                                                cam_verts[face[2]]};
    // Clip against z >= z_near (Sutherland-Hodgman); yields up to 4 vertices.
    int n = 0;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d& cur = tri[i];
      const Eigen::Vector3d& nxt = tri[(i + 1) % 3];
      const bool in_cur = cur.z() >= intr.z_near;
      const bool in_nxt = nxt.z() >= intr.z_near;
      if (in_cur) poly[n++] = cur;
      if (in_cur != in_nxt) {
        const double t = (intr.z_near - cur.z()) / (nxt.z() - cur.z());
        poly[n++] = cur + t * (nxt - cur);
      }
    }
    if (n < 3) continue;

    std::array<ScreenVert, 4> screen;
    for (int i = 0; i < n; ++i) {
      const double invz = 1.0 / poly[i].z();
      screen[i] = {intr.fx * poly[i].x() * invz + intr.cx,
                   intr.fy * poly[i].y() * invz + intr.cy, invz};
    }
    for (int i = 1; i + 1 < n; ++i) {
      raster_triangle(screen[0], screen[i], screen[i + 1], intr, rect, buf);
    }
  }
}

DepthImage render_depth(const ObjectModel& model, const Pose6D& pose_cam,
                        const CameraIntrinsics& intr) {
  DepthImage buf(intr.width, intr.height);
  rasterize_into(model.mesh, pose_cam, intr, buf);
  return buf;
}

DepthImage render_depth_roi(const ObjectModel& model, const Pose6D& pose_cam,
                            const CameraIntrinsics& intr,
                            const PixelRect& roi) {
  DepthImage buf(std::max(0, roi.width()), std::max(0, roi.height()), roi.x0,
                 roi.y0);
  if (!roi.empty()) rasterize_into(model.mesh, pose_cam, intr, buf);
  return buf;
}

DepthImage render_scene_depth(
    const std::vector<std::pair<const ObjectModel*, Pose6D>>& objects,
    const CameraIntrinsics& intr) {
  DepthImage buf(intr.width, intr.height);
  for (const auto& [model, pose] : objects) {
    rasterize_into(model->mesh, pose, intr, buf);
  }
  return buf;
}

PointCloud backproject(const DepthImage& depth, const CameraIntrinsics& intr) {
  const bool full = depth.origin_x == 0 && depth.origin_y == 0 &&
                    depth.width == intr.width && depth.height == intr.height;
  const bool roi_ok = depth.origin_x >= 0 && depth.origin_y >= 0 &&
                      depth.origin_x + depth.width <= intr.width &&
                      depth.origin_y + depth.height <= intr.height;
  if (!full && !roi_ok) {
    throw std::invalid_argument(
        "backproject: depth image does not fit the camera dimensions");
  }
  PointCloud cloud(depth.width, depth.height, depth.origin_x, depth.origin_y);
  for (int j = 0; j < depth.height; ++j) {
    for (int i = 0; i < depth.width; ++i) {
      const double z = depth.at(i, j);
      if (!DepthImage::is_valid(z)) continue;
      const double a = static_cast<double>(depth.origin_x + i);
      const double b = static_cast<double>(depth.origin_y + j);
      const std::size_t idx = cloud.index(i, j);
      cloud.points[idx] = {(a - intr.cx) * z / intr.fx,
                           (b - intr.cy) * z / intr.fy, z};
      cloud.valid[idx] = 1;
      ++cloud.valid_count;
    }
  }
  return cloud;
}

std::optional<PointCloud> crop(const PointCloud& cloud, const BBox2D& box) {
  const double img_w = static_cast<double>(cloud.origin_x + cloud.width);
  const double img_h = static_cast<double>(cloud.origin_y + cloud.height);
  if (box.max_x <= cloud.origin_x || box.min_x >= img_w ||
      box.max_y <= cloud.origin_y || box.min_y >= img_h) {
    return std::nullopt;
  }
  PointCloud out(cloud.width, cloud.height, cloud.origin_x, cloud.origin_y);
  for (int j = 0; j < cloud.height; ++j) {
    for (int i = 0; i < cloud.width; ++i) {
      const std::size_t idx = cloud.index(i, j);
      if (!cloud.valid[idx]) continue;
      if (!box.contains_pixel(cloud.origin_x + i, cloud.origin_y + j)) continue;
      out.points[idx] = cloud.points[idx];
      out.valid[idx] = 1;
      ++out.valid_count;
    }
  }
  return out;
}

int remove_support_plane(PointCloud& cloud, const Camera& camera,
                         double plane_z, double margin) {
  const Pose6D& cam_pose = camera.pose;
  int removed = 0;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (!cloud.valid[i]) continue;
    if (cam_pose.apply(cloud.points[i]).z() <= plane_z + margin) {
      cloud.valid[i] = 0;
      --cloud.valid_count;
      ++removed;
    }
  }
  return removed;
}

DepthImage add_depth_noise(const DepthImage& depth,
                           const CameraIntrinsics& intr, double sigma,
                           std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  DepthImage out = depth;
  if (sigma == 0.0) return out;
  const double lo = std::nextafter(intr.z_near, intr.z_far);
  const double hi = std::nextafter(intr.z_far, intr.z_near);
  Rng rng(seed);
  for (double& d : out.depth) {
    if (!DepthImage::is_valid(d)) continue;
    d = std::clamp(d + sigma * rng.normal(), lo, hi);
  }
  return out;
}

}  // namespace sceneest
