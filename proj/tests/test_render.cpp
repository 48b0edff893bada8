#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sceneest/camera.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/pgm_io.hpp"
#include "sceneest/render.hpp"
#include "sceneest/rng.hpp"
#include "support/oracles.hpp"

using namespace sceneest;

namespace {

CameraIntrinsics test_camera(int w = 640, int h = 480, double f = 200.0) {
  CameraIntrinsics intr;
  intr.width = w;
  intr.height = h;
  intr.fx = intr.fy = f;
  intr.cx = w / 2.0;
  intr.cy = h / 2.0;
  intr.z_near = 0.1;
  intr.z_far = 10.0;
  return intr;
}

// A camera-facing unit square: two triangles spanning [-0.5, 0.5]^2 at z=0.
TriMesh facing_square(double side = 1.0) {
  TriMesh m;
  const double h = side / 2;
  m.vertices = {{-h, -h, 0}, {h, -h, 0}, {h, h, 0}, {-h, h, 0}};
  m.faces = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

}  // namespace

TEST_CASE("fronto-parallel square renders at constant depth") {
  const CameraIntrinsics intr = test_camera();
  const ObjectModel square = make_object_model(0, facing_square());
  const DepthImage img = render_depth(square, Pose6D::translate(0, 0, 1), intr);

  // Square spans +-200 px around the principal point; half-open pixel rule
  // gives exactly 400x400 covered pixels.
  int covered = 0;
  for (int y = 0; y < intr.height; ++y) {
    for (int x = 0; x < intr.width; ++x) {
      const double d = img.at(x, y);
      if (!DepthImage::is_valid(d)) continue;
      ++covered;
      CHECK(d == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(x >= 120);
      CHECK(x < 520);
      CHECK(y >= 40);
      CHECK(y < 440);
    }
  }
  CHECK(covered == 400 * 400);
}

TEST_CASE("z-buffer keeps the nearest surface") {
  const CameraIntrinsics intr = test_camera();
  const ObjectModel near_sq = make_object_model(0, facing_square(0.5));
  const ObjectModel far_sq = make_object_model(1, facing_square(0.5));

  DepthImage img(intr.width, intr.height);
  rasterize_into(far_sq.mesh, Pose6D::translate(0, 0, 2), intr, img);
  rasterize_into(near_sq.mesh, Pose6D::translate(0, 0, 1), intr, img);

  // Overlap pixels must report the near square.
  const double mid = img.at(intr.width / 2, intr.height / 2);
  CHECK(mid == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("empty mesh renders an empty image") {
  const CameraIntrinsics intr = test_camera(64, 48);
  ObjectModel empty;
  const DepthImage img = render_depth(empty, Pose6D::identity(), intr);
  CHECK(img.valid_count() == 0);
}

TEST_CASE("scene render equals the pixelwise minimum of single renders") {
  const CameraIntrinsics intr = test_camera(320, 240, 150.0);
  const ObjectModel a = make_object_model(0, make_box(0.4, 0.3, 0.2));
  const ObjectModel b = make_object_model(1, make_cylinder(0.15, 0.3));
  const Pose6D pa = Pose6D::from_rpy({-0.1, 0, 1.2}, 0.3, 0.2, 0.1);
  const Pose6D pb = Pose6D::from_rpy({0.15, 0.05, 1.5}, 0, 0.4, 0.9);

  const DepthImage scene = render_scene_depth({{&a, pa}, {&b, pb}}, intr);
  const DepthImage ia = render_depth(a, pa, intr);
  const DepthImage ib = render_depth(b, pb, intr);

  for (std::size_t i = 0; i < scene.depth.size(); ++i) {
    CHECK(scene.depth[i] == std::min(ia.depth[i], ib.depth[i]));
  }
}

TEST_CASE("full occlusion reproduces the occluder alone") {
  const CameraIntrinsics intr = test_camera(160, 120, 100.0);
  const ObjectModel front = make_object_model(0, facing_square(1.0));
  const ObjectModel back = make_object_model(1, facing_square(0.3));
  const DepthImage scene = render_scene_depth(
      {{&front, Pose6D::translate(0, 0, 1)}, {&back, Pose6D::translate(0, 0, 2)}},
      intr);
  const DepthImage solo = render_depth(front, Pose6D::translate(0, 0, 1), intr);
  CHECK(scene.depth == solo.depth);
}

TEST_CASE("roi render agrees with the full-image render") {
  const CameraIntrinsics intr = test_camera(320, 240, 150.0);
  const ObjectModel m = make_object_model(0, make_l_shape(0.2, 0.15, 0.06, 0.1));
  const Pose6D pose = Pose6D::from_rpy({0.05, -0.04, 1.1}, 0.2, -0.3, 0.7);

  const DepthImage full = render_depth(m, pose, intr);
  const PixelRect roi{100, 60, 260, 200};
  const DepthImage part = render_depth_roi(m, pose, intr, roi);

  for (int y = roi.y0; y < roi.y1; ++y) {
    for (int x = roi.x0; x < roi.x1; ++x) {
      CHECK(part.at(x - roi.x0, y - roi.y0) == full.at(x, y));
    }
  }
}

TEST_CASE("backprojection follows the pinhole equations") {
  const CameraIntrinsics intr = test_camera();
  DepthImage img(intr.width, intr.height);
  img.at(static_cast<int>(intr.cx), static_cast<int>(intr.cy)) = 2.0;
  img.at(static_cast<int>(intr.cx + intr.fx), static_cast<int>(intr.cy)) = 1.0;

  const PointCloud cloud = backproject(img, intr);
  CHECK(cloud.valid_count == 2);
  const Eigen::Vector3d center =
      cloud.point(static_cast<int>(intr.cx), static_cast<int>(intr.cy));
  CHECK((center - Eigen::Vector3d(0, 0, 2)).norm() < 1e-12);
  const Eigen::Vector3d off = cloud.point(
      static_cast<int>(intr.cx + intr.fx), static_cast<int>(intr.cy));
  CHECK((off - Eigen::Vector3d(1, 0, 1)).norm() < 1e-12);
}

TEST_CASE("backprojecting an empty image yields no valid points") {
  const CameraIntrinsics intr = test_camera(32, 24);
  const PointCloud cloud = backproject(DepthImage(32, 24), intr);
  CHECK(cloud.valid_count == 0);
}

TEST_CASE("backproject rejects mismatched dimensions") {
  const CameraIntrinsics intr = test_camera(64, 48);
  CHECK_THROWS_AS(backproject(DepthImage(65, 48), intr), std::invalid_argument);
}

TEST_CASE("crop semantics") {
  const CameraIntrinsics intr = test_camera(100, 80, 60.0);
  const ObjectModel m = make_object_model(0, make_box(0.5, 0.5, 0.5));
  const DepthImage img = render_depth(m, Pose6D::translate(0, 0, 1.2), intr);
  const PointCloud cloud = backproject(img, intr);

  SUBCASE("full-image box keeps everything") {
    const auto full = crop(cloud, {0, 0, 100, 80});
    REQUIRE(full.has_value());
    CHECK(full->valid_count == cloud.valid_count);
  }

  SUBCASE("left-half box matches a direct pixel scan") {
    const auto half = crop(cloud, {0, 0, 50, 80});
    REQUIRE(half.has_value());
    int expected = 0;
    for (int y = 0; y < 80; ++y) {
      for (int x = 0; x < 50; ++x) expected += cloud.is_valid(x, y) ? 1 : 0;
    }
    CHECK(half->valid_count == expected);
    CHECK(half->valid_count > 0);
  }

  SUBCASE("box outside the image is an empty crop") {
    CHECK(!crop(cloud, {200, 200, 300, 300}).has_value());
    CHECK(!crop(cloud, {-50, 0, -1, 80}).has_value());
  }
}

TEST_CASE("depth noise is seeded and unbiased") {
  const CameraIntrinsics intr = test_camera(400, 300, 150.0);
  const ObjectModel m = make_object_model(0, facing_square(2.0));
  const DepthImage clean = render_depth(m, Pose6D::translate(0, 0, 1.5), intr);
  REQUIRE(clean.valid_count() > 100000);

  SUBCASE("sigma zero is bitwise identical") {
    const DepthImage same = add_depth_noise(clean, intr, 0.0, 42);
    CHECK(same.depth == clean.depth);
  }

  SUBCASE("same seed is bitwise reproducible") {
    const DepthImage a = add_depth_noise(clean, intr, 0.005, 42);
    const DepthImage b = add_depth_noise(clean, intr, 0.005, 42);
    CHECK(a.depth == b.depth);
    const DepthImage c = add_depth_noise(clean, intr, 0.005, 43);
    CHECK(a.depth != c.depth);
  }

  SUBCASE("sample mean of the perturbation is near zero") {
    const double sigma = 0.005;
    const DepthImage noisy = add_depth_noise(clean, intr, sigma, 7);
    double sum = 0.0;
    long n = 0;
    for (std::size_t i = 0; i < clean.depth.size(); ++i) {
      if (!DepthImage::is_valid(clean.depth[i])) continue;
      sum += noisy.depth[i] - clean.depth[i];
      ++n;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(static_cast<double>(n)));
  }

  SUBCASE("noisy depths stay inside the clip range") {
    const DepthImage noisy = add_depth_noise(clean, intr, 0.05, 9);
    for (double d : noisy.depth) {
      if (!DepthImage::is_valid(d)) continue;
      CHECK(d > intr.z_near);
      CHECK(d < intr.z_far);
    }
  }
}

TEST_CASE("render/backproject round-trip lies on the mesh surface") {
  const CameraIntrinsics intr = test_camera(320, 240, 260.0);
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int shape = trial % 3;
    const ObjectModel m = make_object_model(
        0, shape == 0   ? make_box(0.2, 0.15, 0.1)
           : shape == 1 ? make_cylinder(0.08, 0.2)
                        : make_l_shape(0.18, 0.12, 0.05, 0.09));
    const Pose6D pose{Eigen::Vector3d(rng.uniform(-0.2, 0.2),
                                      rng.uniform(-0.15, 0.15),
                                      rng.uniform(0.8, 1.6)),
                      rng.uniform_quaternion()};
    const TriMesh posed = transformed(m.mesh, pose);
    const DepthImage img = render_depth(m, pose, intr);
    const PointCloud cloud = backproject(img, intr);
    REQUIRE(cloud.valid_count > 0);
    for (std::size_t i = 0; i < cloud.points.size(); i += 17) {
      if (!cloud.valid[i]) continue;
      CHECK(oracle::point_mesh_distance(cloud.points[i], posed) < 1e-4);
    }
  }
}

TEST_CASE("silhouette pixel count scales with resolution") {
  const ObjectModel m = make_object_model(0, make_cylinder(0.1, 0.25));
  const Pose6D pose = Pose6D::from_rpy({0, 0, 1.2}, 0.4, 0.3, 0.2);

  const CameraIntrinsics base = test_camera(320, 240, 150.0);
  CameraIntrinsics doubled = test_camera(640, 480, 300.0);

  const int n1 = render_depth(m, pose, base).valid_count();
  const int n2 = render_depth(m, pose, doubled).valid_count();
  CHECK(std::abs(static_cast<double>(n2) / n1 - 4.0) < 0.2);
}

TEST_CASE("abutting triangles cover shared-edge pixels exactly once") {
  // Two triangles sharing a vertical edge; the top-left rule must assign
  // each boundary pixel to exactly one of them.
  const CameraIntrinsics intr = test_camera(64, 64, 32.0);
  TriMesh left, right;
  left.vertices = {{-1, -1, 0}, {0, -1, 0}, {0, 1, 0}, {-1, 1, 0}};
  left.faces = {{0, 1, 2}, {0, 2, 3}};
  right.vertices = {{0, -1, 0}, {1, -1, 0}, {1, 1, 0}, {0, 1, 0}};
  right.faces = {{0, 1, 2}, {0, 2, 3}};

  DepthImage both(intr.width, intr.height);
  rasterize_into(left, Pose6D::translate(0, 0, 2), intr, both);
  const int left_count = both.valid_count();
  rasterize_into(right, Pose6D::translate(0, 0, 2), intr, both);
  const int total = both.valid_count();

  DepthImage merged(intr.width, intr.height);
  TriMesh quad;
  quad.vertices = {{-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}};
  quad.faces = {{0, 1, 2}, {0, 2, 3}};
  rasterize_into(quad, Pose6D::translate(0, 0, 2), intr, merged);

  CHECK(total == merged.valid_count());
  CHECK(left_count < total);
}

TEST_CASE("pgm export writes a well-formed 16-bit file") {
  DepthImage img(4, 2);
  img.at(0, 0) = 1.234;
  img.at(3, 1) = 0.5;
  const std::string path = "test_depth_out.pgm";
  write_depth_pgm16(path, img);

  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int w, h, maxval;
  in >> magic >> w >> h >> maxval;
  in.get();
  CHECK(magic == "P5");
  CHECK(w == 4);
  CHECK(h == 2);
  CHECK(maxval == 65535);
  std::vector<unsigned char> bytes(16);
  in.read(reinterpret_cast<char*>(bytes.data()), 16);
  CHECK(in.gcount() == 16);
  // Pixel (0,0): 1234 mm big-endian.
  CHECK(bytes[0] * 256 + bytes[1] == 1234);
  // Empty pixel maps to 0.
  CHECK(bytes[2] * 256 + bytes[3] == 0);
  // Pixel (3,1): 500 mm.
  CHECK(bytes[14] * 256 + bytes[15] == 500);
  std::remove(path.c_str());
}
