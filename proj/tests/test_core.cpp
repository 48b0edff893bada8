#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <sstream>

#include "sceneest/bbox.hpp"
#include "sceneest/camera.hpp"
#include "sceneest/label.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/ply_io.hpp"
#include "sceneest/pose.hpp"
#include "sceneest/rng.hpp"
#include "support/oracles.hpp"

using namespace sceneest;

namespace {

Pose6D random_pose(Rng& rng) {
  return {Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1)),
          rng.uniform_quaternion()};
}

}  // namespace

TEST_CASE("compose identity and inverse") {
  Rng rng(7);
  const Pose6D p = random_pose(rng);

  const Pose6D ip = compose(Pose6D::identity(), p);
  CHECK((ip.translation - p.translation).norm() == doctest::Approx(0.0));
  CHECK(rotation_angle(ip.orientation, p.orientation) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const Pose6D round = compose(p, invert(p));
  CHECK(round.translation.norm() < 1e-9);
  CHECK(rotation_angle(round.orientation, Eigen::Quaterniond::Identity()) <
        1e-9);
}

TEST_CASE("compose of translations adds") {
  const Pose6D t = compose(Pose6D::translate(1, 0, 0), Pose6D::translate(0, 2, 0));
  // Frozen from the 4x4 matrix-product oracle.
  const Eigen::Matrix4d m = oracle::compose_matrices(
      Pose6D::translate(1, 0, 0), Pose6D::translate(0, 2, 0));
  CHECK(t.translation.x() == doctest::Approx(1.0));
  CHECK(t.translation.y() == doctest::Approx(2.0));
  CHECK(t.translation.z() == doctest::Approx(0.0));
  CHECK((t.matrix() - m).norm() < 1e-12);
}

TEST_CASE("compose matches the matrix oracle on 1000 random pairs") {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Pose6D a = random_pose(rng);
    const Pose6D b = random_pose(rng);
    const Pose6D c = compose(a, b);
    CHECK((c.matrix() - oracle::compose_matrices(a, b)).cwiseAbs().maxCoeff() <
          1e-9);
    CHECK(std::abs(c.orientation.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("compose is associative") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Pose6D a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    const Pose6D lhs = compose(compose(a, b), c);
    const Pose6D rhs = compose(a, compose(b, c));
    CHECK((lhs.matrix() - rhs.matrix()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("rpy round-trip away from gimbal lock") {
  Rng rng(11);
  const double pitch_cap = std::numbers::pi / 2 - 1e-3;
  for (int i = 0; i < 500; ++i) {
    const double roll = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double pitch = rng.uniform(-pitch_cap, pitch_cap);
    const double yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Pose6D p = Pose6D::from_rpy({0, 0, 0}, roll, pitch, yaw);
    const Eigen::Vector3d back = p.rpy();
    CHECK(std::abs(wrap_angle(back.x() - roll)) < 1e-9);
    CHECK(std::abs(wrap_angle(back.y() - pitch)) < 1e-9);
    CHECK(std::abs(wrap_angle(back.z() - yaw)) < 1e-9);
  }
}

TEST_CASE("wrap_angle folds 190 degrees to 170") {
  const double deg = std::numbers::pi / 180.0;
  CHECK(std::abs(wrap_angle(190.0 * deg)) == doctest::Approx(170.0 * deg));
}

TEST_CASE("iou identities") {
  const BBox2D b{10, 20, 50, 60};
  CHECK(iou(b, b) == doctest::Approx(1.0));
  CHECK(iou({0, 0, 1, 1}, {2, 2, 3, 3}) == 0.0);
}

TEST_CASE("iou 1/7 example matches the grid-counting oracle") {
  const BBox2D a{0, 0, 2, 2}, b{1, 1, 3, 3};
  const double expected = 1.0 / 7.0;
  CHECK(iou(a, b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(oracle::grid_iou(a, b) - expected) < 2e-3);
}

TEST_CASE("iou symmetry and equality property") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const BBox2D a{rng.uniform(0, 50), rng.uniform(0, 50),
                   rng.uniform(51, 100), rng.uniform(51, 100)};
    const BBox2D b{rng.uniform(0, 50), rng.uniform(0, 50),
                   rng.uniform(51, 100), rng.uniform(51, 100)};
    CHECK(iou(a, b) == doctest::Approx(iou(b, a)).epsilon(1e-12));
    CHECK(iou(a, b) <= 1.0);
    if (iou(a, b) == doctest::Approx(1.0).epsilon(1e-12)) {
      CHECK(std::abs(a.min_x - b.min_x) < 1e-9);
    }
  }
}

TEST_CASE("project_bbox of a unit cube on the optical axis") {
  CameraIntrinsics intr;
  intr.width = 640;
  intr.height = 480;
  intr.fx = intr.fy = 500;
  intr.cx = 320;
  intr.cy = 240;
  intr.z_near = 0.1;
  intr.z_far = 10;
  const ObjectModel cube = make_object_model(0, make_box(1, 1, 1));

  const auto box = project_bbox(cube, Pose6D::translate(0, 0, 2), intr);
  REQUIRE(box.has_value());
  // Near face at z = 1.5 governs: half-width 500 * 0.5 / 1.5.
  const double half = 500.0 * 0.5 / 1.5;
  CHECK(box->min_x == doctest::Approx(320 - half).epsilon(1e-9));
  CHECK(box->max_x == doctest::Approx(320 + half).epsilon(1e-9));
  CHECK(box->min_y == doctest::Approx(240 - half).epsilon(1e-9));
  CHECK(box->max_y == doctest::Approx(240 + half).epsilon(1e-9));
  CHECK(box->width() == doctest::Approx(2 * half));

  SUBCASE("behind the camera is not visible") {
    CHECK(!project_bbox(cube, Pose6D::translate(0, 0, -2), intr).has_value());
  }

  SUBCASE("translating +x moves the box +u") {
    const auto moved = project_bbox(cube, Pose6D::translate(0.2, 0, 2), intr);
    REQUIRE(moved.has_value());
    CHECK(moved->min_x > box->min_x);
    CHECK(moved->max_x > box->max_x);
  }

  SUBCASE("shifting cx shifts the box by the same amount") {
    CameraIntrinsics shifted = intr;
    shifted.cx += 15.0;
    const auto moved = project_bbox(cube, Pose6D::translate(0, 0, 2), shifted);
    REQUIRE(moved.has_value());
    CHECK(moved->min_x == doctest::Approx(box->min_x + 15.0).epsilon(1e-9));
    CHECK(moved->max_x == doctest::Approx(box->max_x + 15.0).epsilon(1e-9));
  }
}

TEST_CASE("label registry enforces uniqueness") {
  LabelRegistry reg;
  CHECK(reg.add({"mug", Category::kCleaning}) == 0);
  CHECK(reg.add({"can", Category::kNonCleaning}) == 1);
  CHECK(reg.find("can") == 1);
  CHECK(reg.find("nope") == -1);
  CHECK_THROWS_AS(reg.add({"mug", Category::kCleaning}), std::invalid_argument);
}

TEST_CASE("procedural models validate cleanly") {
  for (const ObjectModel& m :
       {make_object_model(0, make_box(0.1, 0.2, 0.3)),
        make_object_model(1, make_cylinder(0.05, 0.2)),
        make_object_model(2, make_l_shape(0.15, 0.1, 0.05, 0.08))}) {
    CHECK(validate_model(m).empty());
    CHECK(m.bounding_radius > 0.0);
  }
}

TEST_CASE("box symmetry group sizes") {
  // All sides distinct: the three 180-degree rotations.
  CHECK(box_symmetries(0.1, 0.2, 0.3).size() == 3);
  // Two equal sides: the square cross-section adds 90-degree steps (D4).
  CHECK(box_symmetries(0.1, 0.1, 0.3).size() == 7);
  // Cube: full rotation group of the cube minus identity.
  CHECK(box_symmetries(0.2, 0.2, 0.2).size() == 23);
}

TEST_CASE("closest_equivalent_orientation handles flips and revolution") {
  const ObjectModel box = [] {
    ObjectModel m = make_object_model(0, make_box(0.1, 0.2, 0.3));
    m.symmetry.discrete = box_symmetries(0.1, 0.2, 0.3);
    return m;
  }();
  const Eigen::Quaterniond truth = Eigen::Quaterniond::Identity();
  const Eigen::Quaterniond flipped(
      Eigen::AngleAxisd(std::numbers::pi, Eigen::Vector3d::UnitZ()));
  const Eigen::Quaterniond adj =
      closest_equivalent_orientation(flipped, truth, box.symmetry);
  CHECK(rotation_angle(flipped, adj) < 1e-9);

  ObjectModel cyl = make_object_model(1, make_cylinder(0.05, 0.2));
  cyl.symmetry = cylinder_symmetry();
  const Eigen::Quaterniond spun(
      Eigen::AngleAxisd(1.23, Eigen::Vector3d::UnitZ()));
  const Eigen::Quaterniond adj2 =
      closest_equivalent_orientation(spun, truth, cyl.symmetry);
  CHECK(rotation_angle(spun, adj2) < 1e-9);

  // A 90-degree yaw on a box with distinct sides is NOT a symmetry.
  const Eigen::Quaterniond quarter(
      Eigen::AngleAxisd(std::numbers::pi / 2, Eigen::Vector3d::UnitZ()));
  const Eigen::Quaterniond adj3 =
      closest_equivalent_orientation(quarter, truth, box.symmetry);
  CHECK(rotation_angle(quarter, adj3) > 0.5);
}

TEST_CASE("mesh PLY round-trip") {
  const TriMesh mesh = make_l_shape(0.15, 0.1, 0.05, 0.08);
  std::stringstream ss;
  write_mesh_ply(ss, mesh);
  const TriMesh back = read_mesh_ply(ss);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  REQUIRE(back.faces.size() == mesh.faces.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    CHECK((back.vertices[i] - mesh.vertices[i]).norm() < 1e-9);
  }
  CHECK(back.faces == mesh.faces);
}

TEST_CASE("look_at produces an orthonormal camera frame") {
  const Pose6D cam = look_at({0, -1, 1.5}, {0, 0, 0.7});
  const Eigen::Matrix3d r = cam.orientation.toRotationMatrix();
  CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
  // Forward axis points from eye toward the target.
  const Eigen::Vector3d fwd = r.col(2);
  const Eigen::Vector3d expect = (Eigen::Vector3d(0, 0, 0.7) -
                                  Eigen::Vector3d(0, -1, 1.5)).normalized();
  CHECK((fwd - expect).norm() < 1e-12);
}
