#include "sceneest/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sceneest/rng.hpp"

namespace sceneest {

int WorldState::count_sorted() const {
  int n = 0;
  for (const auto& o : objects) n += o.sorted ? 1 : 0;
  return n;
}

int WorldState::count_on_table() const {
  int n = 0;
  for (const auto& o : objects) n += (!o.sorted && !o.off_workspace) ? 1 : 0;
  return n;
}

int WorldState::count_off_workspace() const {
  int n = 0;
  for (const auto& o : objects) n += o.off_workspace ? 1 : 0;
  return n;
}

double rest_z(const TriMesh& mesh, const Eigen::Quaterniond& orientation,
              double table_z) {
  return table_z - min_z_under_rotation(mesh, orientation);
}

WorldState generate_scene(const std::vector<ObjectModel>& models,
                          int object_count, const Table& table,
                          const std::array<Bin, 2>& bins, double tilt_sigma,
                          std::uint64_t seed) {
  if (object_count > static_cast<int>(models.size())) {
    throw std::invalid_argument("object_count exceeds registry size");
  }
  Rng rng(seed);

  // Draw the labels present in this scene (one instance per label).
  std::vector<int> labels(models.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
  for (std::size_t i = labels.size() - 1; i > 0; --i) {
    std::swap(labels[i], labels[rng.uniform_int(i + 1)]);
  }
  labels.resize(object_count);
  std::sort(labels.begin(), labels.end());

  WorldState world;
  world.table = table;
  world.bins = bins;

  // Largest objects first: they have the least room to spare. A failed
  // round restarts all placements with fresh draws.
  std::vector<int> order = labels;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return models[a].bounding_radius > models[b].bounding_radius;
  });

  for (int round = 0; round < 25; ++round) {
    world.objects.clear();
    bool round_ok = true;
    for (int label : order) {
      const ObjectModel& model = models[label];
      const double r = model.bounding_radius;
      const double lo_x = table.min_x + r, hi_x = table.max_x - r;
      const double lo_y = table.min_y + r, hi_y = table.max_y - r;
      if (lo_x >= hi_x || lo_y >= hi_y) {
        throw PlacementFailure("object too large for the table");
      }
      bool placed = false;
      for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
        const double yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double roll = rng.normal(0.0, tilt_sigma);
        const double pitch = rng.normal(0.0, tilt_sigma);
        const double x = rng.uniform(lo_x, hi_x);
        const double y = rng.uniform(lo_y, hi_y);
        bool clear = true;
        for (const auto& other : world.objects) {
          const double min_dist =
              r + models[other.model_index].bounding_radius;
          const double dx = x - other.pose.translation.x();
          const double dy = y - other.pose.translation.y();
          if (dx * dx + dy * dy < min_dist * min_dist) {
            clear = false;
            break;
          }
        }
        if (!clear) continue;
        Pose6D pose = Pose6D::from_rpy({x, y, 0.0}, roll, pitch, yaw);
        pose.translation.z() = rest_z(model.mesh, pose.orientation, table.z);
        world.objects.push_back({label, pose, false, false});
        placed = true;
      }
      if (!placed) {
        round_ok = false;
        break;
      }
    }
    if (round_ok) {
      std::sort(world.objects.begin(), world.objects.end(),
                [](const WorldObject& a, const WorldObject& b) {
                  return a.model_index < b.model_index;
                });
      return world;
    }
  }
  throw PlacementFailure("could not place the scene after 25 rounds");
}

namespace {

void settle_on_table(WorldObject& object, const ObjectModel& model,
                     const Table& table, double x, double y) {
  const double r = model.bounding_radius;
  object.pose.translation.x() =
      std::clamp(x, table.min_x + r, table.max_x - r);
  object.pose.translation.y() =
      std::clamp(y, table.min_y + r, table.max_y - r);
  object.pose.translation.z() =
      rest_z(model.mesh, object.pose.orientation, table.z);
}

}  // namespace

ActionOutcome execute_action(WorldState& world, const Action& action,
                             int target_object,
                             const ExecutionNoiseConfig& cfg,
                             const std::vector<ObjectModel>& models,
                             std::uint64_t seed) {
  Rng rng(seed);
  ActionOutcome outcome = ActionOutcome::kFailInPlace;

  if (target_object >= 0) {
    WorldObject& target = world.objects.at(target_object);
    if (target.sorted) {
      throw TargetAlreadySorted("action targets an already-sorted object");
    }
    const ObjectModel& model = models[target.model_index];

    if (rng.bernoulli(cfg.pick_success_prob)) {
      outcome = ActionOutcome::kSuccess;
      target.pose.translation =
          action.place_pose.translation + rng.normal3(cfg.place_sigma);
      target.pose.orientation = action.place_pose.orientation;
      bool in_bin = false;
      for (const auto& bin : world.bins) {
        in_bin |= bin.region.contains(action.place_pose.translation);
      }
      if (in_bin) {
        target.sorted = true;
      } else {
        settle_on_table(target, model, world.table,
                        target.pose.translation.x(),
                        target.pose.translation.y());
      }
    } else if (rng.bernoulli(cfg.far_fail_prob)) {
      // Mishandled: the object ends up far from both its previous pose and
      // the commanded place pose, possibly leaving the workspace for good.
      outcome = ActionOutcome::kFailFar;
      const double x =
          target.pose.translation.x() + cfg.far_fail_sigma * rng.normal();
      const double y =
          target.pose.translation.y() + cfg.far_fail_sigma * rng.normal();
      const Table& tbl = world.table;
      if (x < tbl.min_x || x > tbl.max_x || y < tbl.min_y || y > tbl.max_y) {
        // Fell off the table; moved well out of the camera frustum.
        target.off_workspace = true;
        Eigen::Vector2d away(x - 0.5 * (tbl.min_x + tbl.max_x),
                             y - 0.5 * (tbl.min_y + tbl.max_y));
        if (away.squaredNorm() < 1e-12) away = {1.0, 0.0};
        away.normalize();
        target.pose.translation =
            Eigen::Vector3d(x + 3.0 * away.x(), y + 3.0 * away.y(), 0.0);
      } else {
        settle_on_table(target, model, world.table, x, y);
      }
    } else {
      outcome = ActionOutcome::kFailInPlace;
      const double x =
          target.pose.translation.x() + cfg.fail_jitter_sigma * rng.normal();
      const double y =
          target.pose.translation.y() + cfg.fail_jitter_sigma * rng.normal();
      settle_on_table(target, model, world.table, x, y);
    }
  }

  // The arm motion disturbs bystanders slightly.
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    if (static_cast<int>(i) == target_object) continue;
    WorldObject& obj = world.objects[i];
    if (obj.sorted || obj.off_workspace) continue;
    if (cfg.bystander_sigma > 0.0) {
      const double x =
          obj.pose.translation.x() + cfg.bystander_sigma * rng.normal();
      const double y =
          obj.pose.translation.y() + cfg.bystander_sigma * rng.normal();
      settle_on_table(obj, models[obj.model_index], world.table, x, y);
    }
  }

  ++world.t;
  return outcome;
}

int resolve_target(const WorldState& world, const Pose6D& pick_pose,
                   double radius) {
  int best = -1;
  double best_dist = radius;
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const WorldObject& obj = world.objects[i];
    if (obj.sorted || obj.off_workspace) continue;
    const double d =
        (obj.pose.translation - pick_pose.translation).norm();
    if (d <= best_dist) {
      best_dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

ObjectModel make_table_model(const Table& table) {
  // Centered slab; posed with table_pose() its top face sits at table.z.
  TriMesh mesh = make_box(table.max_x - table.min_x,
                          table.max_y - table.min_y, 0.04);
  return make_object_model(-1, std::move(mesh));
}

Pose6D table_pose(const Table& table) {
  return Pose6D::translate(0.5 * (table.min_x + table.max_x),
                           0.5 * (table.min_y + table.max_y),
                           table.z - 0.02);
}

}  // namespace sceneest
