#include "sceneest/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sceneest {

using nlohmann::json;

namespace {

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& require(const json& j, const std::string& base,
                    const std::string& key) {
  if (!j.contains(key)) {
    throw ConfigError(join_path(base, key), "missing required field");
  }
  return j.at(key);
}

double get_num(const json& j, const std::string& base, const std::string& key,
               double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join_path(base, key), "expected a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& base, const std::string& key,
            int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError(join_path(base, key), "expected an integer");
  return v.get<int>();
}

Eigen::Vector3d get_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() ||
      !j[1].is_number() || !j[2].is_number()) {
    throw ConfigError(path, "expected an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Category parse_category(const std::string& s, const std::string& path) {
  if (s == "cleaning") return Category::kCleaning;
  if (s == "non_cleaning") return Category::kNonCleaning;
  throw ConfigError(path, "expected 'cleaning' or 'non_cleaning'");
}

ObjectModel build_model(int id, const json& model, const std::string& path) {
  const std::string shape =
      require(model, path, "shape").get<std::string>();
  const json& dims = require(model, path, "dims");
  auto dim = [&](std::size_t i) -> double {
    if (!dims.is_array() || dims.size() <= i || !dims[i].is_number()) {
      throw ConfigError(path + ".dims", "not enough numeric dimensions");
    }
    return dims[i].get<double>();
  };
  if (shape == "box") {
    ObjectModel m = make_object_model(id, make_box(dim(0), dim(1), dim(2)));
    m.symmetry.discrete = box_symmetries(dim(0), dim(1), dim(2));
    return m;
  }
  if (shape == "cylinder") {
    const int segments = dims.size() > 2 ? static_cast<int>(dim(2)) : 24;
    ObjectModel m =
        make_object_model(id, make_cylinder(dim(0), dim(1), segments));
    m.symmetry = cylinder_symmetry();
    return m;
  }
  if (shape == "l_shape") {
    // No nontrivial rotational symmetry.
    return make_object_model(id,
                             make_l_shape(dim(0), dim(1), dim(2), dim(3)));
  }
  throw ConfigError(path + ".shape", "unknown shape '" + shape + "'");
}

void apply_overrides(json& j, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(ov, "override must have the form key.path=value");
    }
    const std::string key = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    std::string pointer = "/";
    for (char c : key) pointer += (c == '.') ? '/' : c;
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;  // plain string
    }
    try {
      j[json::json_pointer(pointer)] = parsed;
    } catch (const json::exception& e) {
      throw ConfigError(key, e.what());
    }
  }
}

ExperimentConfig from_json(json j, const std::vector<std::string>& overrides) {
  apply_overrides(j, overrides);

  ExperimentConfig cfg;

  const std::string mode = require(j, "", "mode").get<std::string>();
  if (mode == "single_scene") cfg.mode = RunMode::kSingleScene;
  else if (mode == "sequential") cfg.mode = RunMode::kSequential;
  else throw ConfigError("mode", "expected 'single_scene' or 'sequential'");

  const json& seeds = require(j, "", "seeds");
  if (!seeds.is_array()) throw ConfigError("seeds", "expected an array");
  for (const auto& s : seeds) {
    if (!s.is_number()) throw ConfigError("seeds", "expected numeric seeds");
    cfg.seeds.push_back(s.get<std::uint64_t>());
  }

  cfg.scene_count = get_int(j, "", "scene_count", 1);
  if (j.contains("scene_seed_base")) {
    cfg.scene_seed_base = j.at("scene_seed_base").get<std::uint64_t>();
  }
  cfg.threads = get_int(j, "", "threads", 0);
  cfg.jobs = get_int(j, "", "jobs", 1);
  if (j.contains("rotation_error_mode")) {
    const std::string m = j.at("rotation_error_mode").get<std::string>();
    if (m == "per_axis_rpy") cfg.rotation_error_mode = RotationErrorMode::kPerAxisRpy;
    else if (m == "geodesic") cfg.rotation_error_mode = RotationErrorMode::kGeodesic;
    else throw ConfigError("rotation_error_mode",
                           "expected 'per_axis_rpy' or 'geodesic'");
  }

  const json& labels = require(j, "", "labels");
  if (!labels.is_array() || labels.empty()) {
    throw ConfigError("labels", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string path = "labels[" + std::to_string(i) + "]";
    const json& lj = labels[i];
    Label label;
    label.name = require(lj, path, "name").get<std::string>();
    label.category = parse_category(
        require(lj, path, "category").get<std::string>(), path + ".category");
    int id;
    try {
      id = cfg.registry.add(label);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ".name", e.what());
    }
    cfg.models.push_back(
        build_model(id, require(lj, path, "model"), path + ".model"));
  }

  SequenceConfig& seq = cfg.sequence;

  const json cam = j.value("camera", json::object());
  CameraIntrinsics intr;
  intr.width = get_int(cam, "camera", "width", 320);
  intr.height = get_int(cam, "camera", "height", 240);
  intr.fx = get_num(cam, "camera", "fx", 260.0);
  intr.fy = get_num(cam, "camera", "fy", 260.0);
  intr.cx = get_num(cam, "camera", "cx", intr.width / 2.0);
  intr.cy = get_num(cam, "camera", "cy", intr.height / 2.0);
  intr.z_near = get_num(cam, "camera", "z_near", 0.2);
  intr.z_far = get_num(cam, "camera", "z_far", 5.0);
  Eigen::Vector3d eye(0.0, -0.85, 1.50), target(0.0, 0.0, 0.72), up(0, 0, 1);
  if (cam.contains("eye")) eye = get_vec3(cam.at("eye"), "camera.eye");
  if (cam.contains("look_at")) target = get_vec3(cam.at("look_at"), "camera.look_at");
  if (cam.contains("up")) up = get_vec3(cam.at("up"), "camera.up");
  seq.params.camera = Camera{intr, look_at(eye, target, up)};

  const json filter = j.value("filter", json::object());
  seq.params.particles = get_int(filter, "filter", "particles", 625);
  seq.params.ilw.iterations = get_int(filter, "filter", "iterations", 25);
  seq.params.ilw.likelihood.epsilon = get_num(filter, "filter", "epsilon", 0.008);
  seq.params.ilw.diffusion.trans_sigma =
      get_num(filter, "filter", "diffusion_trans_sigma", 0.02);
  seq.params.ilw.diffusion.rot_sigma =
      get_num(filter, "filter", "diffusion_rot_sigma", 0.5);
  seq.params.ilw.diffusion.decay =
      get_num(filter, "filter", "diffusion_decay", 0.9);
  seq.params.ilw.resample_ess_fraction =
      get_num(filter, "filter", "resample_ess_fraction", 1.0);
  seq.params.ilw.diffusion.depth_sigma =
      get_num(filter, "filter", "diffusion_depth_sigma", 0.006);
  seq.params.ilw.diffusion.wide_fraction =
      get_num(filter, "filter", "diffusion_wide_fraction", 0.1);
  seq.params.ilw.diffusion.wide_rot_sigma =
      get_num(filter, "filter", "diffusion_wide_rot_sigma", 1.5);
  seq.params.ilw.diffusion.tilt_ratio =
      get_num(filter, "filter", "diffusion_tilt_ratio", 0.35);
  // Depth-aware diffusion splits translation noise about the viewing ray;
  // spin-aware diffusion splits rotation noise about the support normal.
  seq.params.ilw.diffusion.depth_axis =
      seq.params.camera.pose.orientation * Eigen::Vector3d::UnitZ();
  // Spin-split rotation diffusion is available but off by default: it
  // starves early tilt exploration under uniform-orientation init.
  seq.params.ilw.diffusion.spin_axis = Eigen::Vector3d::Zero();

  const json am = j.value("action_model", json::object());
  seq.params.action_model.sigma1 = get_num(am, "action_model", "sigma1", 0.04);
  seq.params.action_model.sigma2 = get_num(am, "action_model", "sigma2", 0.02);
  seq.params.action_model.sigma3 = get_num(am, "action_model", "sigma3", 0.01);
  seq.params.action_model.rot_sigma1 = get_num(am, "action_model", "rot_sigma1", 0.4);
  seq.params.action_model.rot_sigma2 = get_num(am, "action_model", "rot_sigma2", 0.2);
  seq.params.action_model.rot_sigma3 = get_num(am, "action_model", "rot_sigma3", 0.1);
  seq.params.action_model.w1 = get_num(am, "action_model", "w1", 0.8);
  seq.params.action_model.w2 = get_num(am, "action_model", "w2", 0.2);

  const json assoc = j.value("association", json::object());
  seq.params.association.termination_patience =
      get_int(assoc, "association", "termination_patience", 3);
  seq.params.association.score_threshold =
      get_num(assoc, "association", "score_threshold", 0.05);

  const json harness = j.value("harness", json::object());
  seq.params.sigma_c = get_num(harness, "harness", "sigma_c", 0.1);
  seq.params.rejection_threshold =
      get_num(harness, "harness", "rejection_threshold", 0.02);
  seq.depth_noise_sigma = get_num(harness, "harness", "depth_noise_sigma", 0.0);
  seq.trial_cap = get_int(harness, "harness", "trial_cap", 0);
  seq.grasp_radius = get_num(harness, "harness", "grasp_radius", 0.12);
  seq.params.support_margin =
      get_num(harness, "harness", "support_margin", 0.005);
  const bool segment_plane = harness.value("segment_support_plane", true);

  const json det = j.value("detector", json::object());
  seq.detector.miss_rate = get_num(det, "detector", "miss_rate", 0.0);
  seq.detector.false_positive_rate_per_frame =
      get_num(det, "detector", "false_positive_rate_per_frame", 0.0);
  seq.detector.bbox_jitter_sigma =
      get_num(det, "detector", "bbox_jitter_sigma", 0.0);
  seq.detector.confidence_concentration =
      get_num(det, "detector", "confidence_concentration", 0.0);
  seq.detector.min_box_confidence =
      get_num(det, "detector", "min_box_confidence", 0.0);
  seq.detector.min_visibility = get_num(det, "detector", "min_visibility", 0.25);
  if (det.contains("confusion") && !det.at("confusion").empty()) {
    const json& conf = det.at("confusion");
    if (!conf.is_array()) throw ConfigError("detector.confusion", "expected an array");
    for (const auto& row : conf) {
      if (!row.is_array()) throw ConfigError("detector.confusion", "expected rows");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      seq.detector.confusion.push_back(std::move(r));
    }
  }

  const json exec = j.value("execution", json::object());
  seq.execution.pick_success_prob =
      get_num(exec, "execution", "pick_success_prob", 1.0);
  seq.execution.place_sigma = get_num(exec, "execution", "place_sigma", 0.0);
  seq.execution.fail_jitter_sigma =
      get_num(exec, "execution", "fail_jitter_sigma", 0.0);
  seq.execution.bystander_sigma =
      get_num(exec, "execution", "bystander_sigma", 0.0);
  seq.execution.far_fail_prob = get_num(exec, "execution", "far_fail_prob", 0.0);
  seq.execution.far_fail_sigma =
      get_num(exec, "execution", "far_fail_sigma", 0.25);

  const json world = j.value("world", json::object());
  seq.object_count = get_int(world, "world", "object_count", 5);
  seq.tilt_sigma = get_num(world, "world", "tilt_sigma", 0.05);
  const json table = world.value("table", json::object());
  seq.table.z = get_num(table, "world.table", "z", 0.72);
  seq.table.min_x = get_num(table, "world.table", "min_x", -0.40);
  seq.table.max_x = get_num(table, "world.table", "max_x", 0.40);
  seq.table.min_y = get_num(table, "world.table", "min_y", -0.30);
  seq.table.max_y = get_num(table, "world.table", "max_y", 0.30);
  if (segment_plane) seq.params.support_plane_z = seq.table.z;
  if (world.contains("workspace")) {
    const json& ws = world.at("workspace");
    seq.params.workspace.min = get_vec3(require(ws, "world.workspace", "min"),
                                        "world.workspace.min");
    seq.params.workspace.max = get_vec3(require(ws, "world.workspace", "max"),
                                        "world.workspace.max");
  } else {
    seq.params.workspace = {{-0.5, -0.4, 0.70}, {0.5, 0.4, 1.05}};
  }
  if (world.contains("bins")) {
    const json& bins = world.at("bins");
    if (!bins.is_array() || bins.size() != 2) {
      throw ConfigError("world.bins", "expected exactly 2 bins");
    }
    for (int b = 0; b < 2; ++b) {
      const std::string path = "world.bins[" + std::to_string(b) + "]";
      const json& bj = bins[b];
      Bin bin;
      bin.category = parse_category(
          require(bj, path, "category").get<std::string>(), path + ".category");
      bin.region.min = get_vec3(require(bj, path, "min"), path + ".min");
      bin.region.max = get_vec3(require(bj, path, "max"), path + ".max");
      const Eigen::Vector3d drop = get_vec3(require(bj, path, "drop"), path + ".drop");
      bin.drop_pose = Pose6D::translate(drop.x(), drop.y(), drop.z());
      seq.bins[b] = bin;
    }
  } else {
    seq.bins[0] = {Category::kCleaning,
                   {{0.85, -0.25, 0.70}, {1.25, 0.25, 1.05}},
                   Pose6D::translate(1.05, 0.0, 0.80)};
    seq.bins[1] = {Category::kNonCleaning,
                   {{-1.25, -0.25, 0.70}, {-0.85, 0.25, 1.05}},
                   Pose6D::translate(-1.05, 0.0, 0.80)};
  }

  return cfg;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", e.what());
  }
  return from_json(std::move(j), overrides);
}

ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  const SequenceConfig& seq = cfg.sequence;
  const SumParams& p = seq.params;

  check(!cfg.seeds.empty(), "seeds: must be non-empty");
  check(cfg.scene_count >= 1, "scene_count: must be >= 1");
  check(cfg.registry.size() >= 1, "labels: must declare at least one label");
  for (int i = 0; i < cfg.registry.size(); ++i) {
    for (const std::string& issue : validate_model(cfg.models[i])) {
      v.push_back("labels[" + std::to_string(i) + "].model: " + issue);
    }
  }

  check(p.sigma_c > 0.0 && p.sigma_c < 1.0,
        "harness.sigma_c must be in (0,1)");
  check(p.rejection_threshold >= 0.0,
        "harness.rejection_threshold: must be >= 0");
  check(seq.grasp_radius > 0.0, "harness.grasp_radius: must be > 0");
  check(seq.depth_noise_sigma >= 0.0,
        "harness.depth_noise_sigma: must be >= 0");

  check(p.particles >= 1, "filter.particles: must be >= 1");
  check(p.ilw.iterations >= 1, "filter.iterations: must be >= 1");
  check(p.ilw.likelihood.epsilon > 0.0, "filter.epsilon: must be > 0");
  check(p.ilw.diffusion.trans_sigma >= 0.0,
        "filter.diffusion_trans_sigma: must be >= 0");
  check(p.ilw.diffusion.rot_sigma >= 0.0,
        "filter.diffusion_rot_sigma: must be >= 0");
  check(p.ilw.diffusion.decay > 0.0 && p.ilw.diffusion.decay <= 1.0,
        "filter.diffusion_decay: must be in (0,1]");
  check(p.ilw.diffusion.wide_fraction >= 0.0 &&
            p.ilw.diffusion.wide_fraction <= 1.0,
        "filter.diffusion_wide_fraction: must be in [0,1]");
  check(p.ilw.diffusion.wide_rot_sigma >= 0.0,
        "filter.diffusion_wide_rot_sigma: must be >= 0");

  const ActionModelParams& am = p.action_model;
  check(std::abs(am.w1 + am.w2 - 1.0) <= 1e-9,
        "action_model: w1 + w2 must sum to 1");
  check(am.sigma1 >= 0 && am.sigma2 >= 0 && am.sigma3 >= 0,
        "action_model: sigmas must be >= 0");
  check(am.rot_sigma1 >= 0 && am.rot_sigma2 >= 0 && am.rot_sigma3 >= 0,
        "action_model: rot_sigmas must be >= 0");
  check(am.w1 >= 0 && am.w2 >= 0, "action_model: weights must be >= 0");

  check(p.association.termination_patience >= 1,
        "association.termination_patience: must be >= 1");
  check(p.association.score_threshold >= 0.0,
        "association.score_threshold: must be >= 0");

  const DetectorNoiseConfig& det = seq.detector;
  check(det.miss_rate >= 0.0 && det.miss_rate <= 1.0,
        "detector.miss_rate: must be in [0,1]");
  check(det.false_positive_rate_per_frame >= 0.0,
        "detector.false_positive_rate_per_frame: must be >= 0");
  check(det.bbox_jitter_sigma >= 0.0,
        "detector.bbox_jitter_sigma: must be >= 0");
  check(det.confidence_concentration >= 0.0,
        "detector.confidence_concentration: must be >= 0");
  check(det.min_box_confidence >= 0.0 && det.min_box_confidence <= 1.0,
        "detector.min_box_confidence: must be in [0,1]");
  check(det.min_visibility >= 0.0 && det.min_visibility <= 1.0,
        "detector.min_visibility: must be in [0,1]");
  if (!det.confusion.empty()) {
    check(static_cast<int>(det.confusion.size()) == cfg.registry.size(),
          "detector.confusion: must be N x N over the label registry");
    for (std::size_t r = 0; r < det.confusion.size(); ++r) {
      const auto& row = det.confusion[r];
      if (static_cast<int>(row.size()) != cfg.registry.size()) {
        v.push_back("detector.confusion: row " + std::to_string(r) +
                    " has wrong length");
        continue;
      }
      double sum = 0.0;
      bool nonneg = true;
      for (double x : row) {
        sum += x;
        nonneg &= x >= 0.0;
      }
      check(nonneg, "detector.confusion: entries must be >= 0");
      check(std::abs(sum - 1.0) <= 1e-9,
            "detector.confusion: row " + std::to_string(r) +
                " must sum to 1");
    }
  }

  const ExecutionNoiseConfig& ex = seq.execution;
  check(ex.pick_success_prob >= 0.0 && ex.pick_success_prob <= 1.0,
        "execution.pick_success_prob: must be in [0,1]");
  check(ex.far_fail_prob >= 0.0 && ex.far_fail_prob <= 1.0,
        "execution.far_fail_prob: must be in [0,1]");
  check(ex.place_sigma >= 0 && ex.fail_jitter_sigma >= 0 &&
            ex.bystander_sigma >= 0 && ex.far_fail_sigma >= 0,
        "execution: sigmas must be >= 0");

  const CameraIntrinsics& intr = p.camera.intr;
  check(intr.width > 0 && intr.height > 0, "camera: width/height must be > 0");
  check(intr.fx > 0 && intr.fy > 0, "camera: fx/fy must be > 0");
  check(intr.z_near > 0 && intr.z_near < intr.z_far,
        "camera: requires 0 < z_near < z_far");

  check(seq.object_count >= 1, "world.object_count: must be >= 1");
  check(seq.object_count <= cfg.registry.size(),
        "world.object_count: must not exceed the label registry size");
  check(seq.table.max_x > seq.table.min_x && seq.table.max_y > seq.table.min_y,
        "world.table: extents must be positive");
  check(seq.tilt_sigma >= 0.0, "world.tilt_sigma: must be >= 0");
  check(p.workspace.valid(), "world.workspace: must be a valid volume");
  bool bins_have_both = (seq.bins[0].category != seq.bins[1].category);
  check(bins_have_both, "world.bins: need one bin per category");
  for (int b = 0; b < 2; ++b) {
    const Bin& bin = seq.bins[b];
    const std::string path = "world.bins[" + std::to_string(b) + "]";
    check(bin.region.valid(), path + ": region must be a valid volume");
    check(bin.region.contains(bin.drop_pose.translation),
          path + ": drop pose must lie inside the bin region");
    const bool overlaps_table =
        bin.region.max.x() > seq.table.min_x &&
        bin.region.min.x() < seq.table.max_x &&
        bin.region.max.y() > seq.table.min_y &&
        bin.region.min.y() < seq.table.max_y;
    check(!overlaps_table, path + ": bin must be disjoint from the table");
  }

  check(cfg.jobs >= 1, "jobs: must be >= 1");
  check(cfg.threads >= 0, "threads: must be >= 0");
  return v;
}

std::vector<std::string> reference_default_notes(const ExperimentConfig& cfg) {
  std::vector<std::string> notes;
  auto note = [&](bool match, const std::string& line) {
    if (match) notes.push_back(line + " [reference default]");
  };
  const SumParams& p = cfg.sequence.params;
  note(p.particles == 625, "filter.particles = 625");
  note(p.ilw.iterations == 25, "filter.iterations = 25");
  note(p.ilw.likelihood.epsilon == 0.008, "filter.epsilon = 0.008");
  note(p.sigma_c == 0.1, "harness.sigma_c = 0.1");
  note(p.action_model.sigma1 == 0.04, "action_model.sigma1 = 0.04");
  note(p.action_model.sigma2 == 0.02, "action_model.sigma2 = 0.02");
  note(p.action_model.sigma3 == 0.01, "action_model.sigma3 = 0.01");
  return notes;
}

std::string default_config_json() {
  return R"({
  "mode": "single_scene",
  "seeds": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
  "scene_count": 10,
  "scene_seed_base": 1234,
  "labels": [
    {"name": "spray_bottle", "category": "cleaning",
     "model": {"shape": "l_shape", "dims": [0.16, 0.09, 0.05, 0.20]}},
    {"name": "bleach_bottle", "category": "cleaning",
     "model": {"shape": "cylinder", "dims": [0.045, 0.24]}},
    {"name": "sponge", "category": "cleaning",
     "model": {"shape": "box", "dims": [0.12, 0.08, 0.05]}},
    {"name": "cereal_box", "category": "non_cleaning",
     "model": {"shape": "box", "dims": [0.16, 0.06, 0.22]}},
    {"name": "soup_can", "category": "non_cleaning",
     "model": {"shape": "cylinder", "dims": [0.035, 0.11]}},
    {"name": "toy_arch", "category": "non_cleaning",
     "model": {"shape": "l_shape", "dims": [0.15, 0.10, 0.05, 0.09]}}
  ],
  "camera": {
    "width": 320, "height": 240,
    "fx": 260.0, "fy": 260.0, "cx": 160.0, "cy": 120.0,
    "z_near": 0.2, "z_far": 5.0,
    "eye": [0.0, -0.85, 1.50], "look_at": [0.0, 0.0, 0.72], "up": [0, 0, 1]
  },
  "filter": {
    "particles": 625, "iterations": 25, "epsilon": 0.008,
    "diffusion_trans_sigma": 0.02, "diffusion_rot_sigma": 0.5,
    "diffusion_decay": 0.9, "diffusion_wide_fraction": 0.1,
    "diffusion_wide_rot_sigma": 1.5, "diffusion_depth_sigma": 0.006
  },
  "action_model": {
    "sigma1": 0.04, "sigma2": 0.02, "sigma3": 0.01,
    "rot_sigma1": 0.4, "rot_sigma2": 0.2, "rot_sigma3": 0.1,
    "w1": 0.8, "w2": 0.2
  },
  "association": {"termination_patience": 3, "score_threshold": 0.05},
  "harness": {
    "sigma_c": 0.1, "rejection_threshold": 0.02,
    "depth_noise_sigma": 0.0, "trial_cap": 0, "grasp_radius": 0.12
  },
  "detector": {
    "miss_rate": 0.0, "false_positive_rate_per_frame": 0.0,
    "bbox_jitter_sigma": 0.0, "confidence_concentration": 0.0,
    "min_box_confidence": 0.0
  },
  "execution": {
    "pick_success_prob": 1.0, "place_sigma": 0.0, "fail_jitter_sigma": 0.0,
    "bystander_sigma": 0.0, "far_fail_prob": 0.0, "far_fail_sigma": 0.25
  },
  "world": {
    "object_count": 5, "tilt_sigma": 0.05,
    "table": {"z": 0.72, "min_x": -0.40, "max_x": 0.40,
              "min_y": -0.30, "max_y": 0.30},
    "workspace": {"min": [-0.5, -0.4, 0.70], "max": [0.5, 0.4, 1.05]},
    "bins": [
      {"category": "cleaning", "min": [0.85, -0.25, 0.70],
       "max": [1.25, 0.25, 1.05], "drop": [1.05, 0.0, 0.80]},
      {"category": "non_cleaning", "min": [-1.25, -0.25, 0.70],
       "max": [-0.85, 0.25, 1.05], "drop": [-1.05, 0.0, 0.80]}
    ]
  }
}
)";
}

}  // namespace sceneest
