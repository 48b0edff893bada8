#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sceneest/aabb.hpp"
#include "sceneest/label.hpp"
#include "sceneest/mesh.hpp"
#include "sceneest/particle_filter.hpp"
#include "sceneest/pose.hpp"

namespace sceneest {

// Support surface: a rectangle at height z.
struct Table {
  double z = 0.7;
  double min_x = -0.35, max_x = 0.35;
  double min_y = -0.25, max_y = 0.25;
};

// One placement region per category, with its commanded drop pose.
struct Bin {
  Category category = Category::kCleaning;
  Aabb region;
  Pose6D drop_pose;
};

struct WorldObject {
  int model_index = -1;  // == label id; one instance per label
  Pose6D pose;           // world frame
  bool sorted = false;
  bool off_workspace = false;
};

// Ground-truth scene state for the sorting task.
struct WorldState {
  Table table;
  std::array<Bin, 2> bins;
  std::vector<WorldObject> objects;
  int t = 0;

  int count_sorted() const;
  int count_on_table() const;
  int count_off_workspace() const;
};

enum class ActionOutcome { kSuccess, kFailInPlace, kFailFar };

// Generative mirror of the action model, plus the mishandled-object branch
// the filter deliberately leaves to data association.
struct ExecutionNoiseConfig {
  double pick_success_prob = 1.0;
  double place_sigma = 0.0;       // meters, around the commanded place pose
  double fail_jitter_sigma = 0.0; // meters, failed pick stays near its pose
  double bystander_sigma = 0.0;   // meters, every other unsorted object
  double far_fail_prob = 0.0;     // mishandled: jumps far from its pose
  double far_fail_sigma = 0.25;   // meters
};

struct PlacementFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TargetAlreadySorted : std::logic_error {
  using std::logic_error::logic_error;
};

// Rest pose height for a mesh with the given orientation sitting on the
// table plane.
double rest_z(const TriMesh& mesh, const Eigen::Quaterniond& orientation,
              double table_z);

// Places `object_count` distinct labels at rejection-sampled positions with
// yaw-dominant orientations; centers keep at least the sum of bounding radii
// apart (in xy), so silhouettes may overlap in the image but meshes do not
// interpenetrate. Deterministic per seed. Throws PlacementFailure when the
// attempt budget is exhausted.
WorldState generate_scene(const std::vector<ObjectModel>& models,
                          int object_count, const Table& table,
                          const std::array<Bin, 2>& bins, double tilt_sigma,
                          std::uint64_t seed);

// Executes a pick-and-place on the resolved ground-truth object
// (target_object == -1 means the gripper closed on air: a failed trial that
// only jitters bystanders). Mutates the world and increments t.
// Throws TargetAlreadySorted when the resolved object was already sorted.
ActionOutcome execute_action(WorldState& world, const Action& action,
                             int target_object,
                             const ExecutionNoiseConfig& cfg,
                             const std::vector<ObjectModel>& models,
                             std::uint64_t seed);

// Nearest unsorted on-table object within `radius` of the pick pose, or -1.
int resolve_target(const WorldState& world, const Pose6D& pick_pose,
                   double radius);

// Thin slab mesh for the table top, used when rendering observations.
ObjectModel make_table_model(const Table& table);
// World pose placing that slab so its top face is at table.z.
Pose6D table_pose(const Table& table);

}  // namespace sceneest
