#include <atomic>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <thread>

#include <CLI11.hpp>

#include "sceneest/config.hpp"
#include "sceneest/csv.hpp"
#include "sceneest/harness.hpp"
#include "sceneest/parallel.hpp"
#include "sceneest/pgm_io.hpp"
#include "sceneest/ply_io.hpp"
#include "sceneest/rng.hpp"

namespace fs = std::filesystem;
using namespace sceneest;

namespace {

struct RunOutcome {
  int scene = -1;
  std::uint64_t seed = 0;
  std::vector<TpRecord> tp;
  FpStats fp;
  double completion = 0.0;
  int trials = 0;
  int errors = 0;
  int frames = 1;
  bool hit_cap = false;
  std::vector<TraceEvent> trace;
};

void write_trace(const std::string& path, const std::vector<TraceEvent>& trace) {
  CsvWriter csv(path);
  csv.row({"frame", "event", "track_id", "det_index", "label", "score", "x",
           "y", "z", "roll", "pitch", "yaw"});
  for (const auto& e : trace) {
    const Eigen::Vector3d rpy = e.pose.rpy();
    csv.row({std::to_string(e.frame), e.event, std::to_string(e.track_id),
             std::to_string(e.det_index), std::to_string(e.label),
             fmt_double(e.score), fmt_double(e.pose.translation.x()),
             fmt_double(e.pose.translation.y()),
             fmt_double(e.pose.translation.z()), fmt_double(rpy.x()),
             fmt_double(rpy.y()), fmt_double(rpy.z())});
  }
}

RunOutcome run_one(const ExperimentConfig& cfg, int scene, std::uint64_t seed) {
  RunOutcome out;
  out.scene = scene;
  out.seed = seed;
  if (cfg.mode == RunMode::kSingleScene) {
    const std::uint64_t scene_seed =
        substream(cfg.scene_seed_base, "scene-id", static_cast<std::uint64_t>(scene));
    SingleSceneResult r =
        run_single_scene(cfg.sequence, cfg.models, scene_seed, seed);
    out.tp = std::move(r.tp_records);
    out.fp = r.fp;
    out.trace = std::move(r.trace);
  } else {
    SequenceResult r = run_sequence(cfg.sequence, cfg.models, cfg.registry, seed);
    out.tp = std::move(r.tp_records);
    out.fp = r.fp;
    out.completion = r.completion_ratio;
    out.trials = r.trials;
    out.errors = r.errors;
    out.frames = r.frames;
    out.hit_cap = r.hit_trial_cap;
    out.trace = std::move(r.trace);
  }
  return out;
}

int cmd_run(const ExperimentConfig& cfg, const std::string& out_dir,
            bool debug_dumps) {
  fs::create_directories(out_dir);

  // Enumerate (scene, seed) runs in a fixed order.
  std::vector<std::pair<int, std::uint64_t>> runs;
  if (cfg.mode == RunMode::kSingleScene) {
    for (std::uint64_t seed : cfg.seeds) {
      for (int s = 0; s < cfg.scene_count; ++s) runs.emplace_back(s, seed);
    }
  } else {
    for (std::uint64_t seed : cfg.seeds) runs.emplace_back(-1, seed);
  }

  std::vector<RunOutcome> outcomes(runs.size());
  if (cfg.jobs > 1) {
    // Run-level worker slots; per-run filtering stays single-threaded so the
    // machine is not oversubscribed. Results land in fixed slots, so the
    // merged output does not depend on scheduling.
    set_max_threads(1);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= runs.size()) break;
        outcomes[i] = run_one(cfg, runs[i].first, runs[i].second);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < cfg.jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  } else {
    set_max_threads(cfg.threads);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      outcomes[i] = run_one(cfg, runs[i].first, runs[i].second);
    }
  }

  // Per-run traces.
  for (const auto& out : outcomes) {
    const std::string name =
        cfg.mode == RunMode::kSingleScene
            ? "trace_scene" + std::to_string(out.scene) + "_seed" +
                  std::to_string(out.seed) + ".csv"
            : "trace_seed" + std::to_string(out.seed) + ".csv";
    write_trace((fs::path(out_dir) / name).string(), out.trace);
  }

  // Aggregate metrics, one row per run plus a pooled summary row.
  std::vector<TpRecord> all_tp;
  FpStats all_fp;
  double fp_ratio_sum = 0.0;
  double completion_sum = 0.0;
  const auto trans_bounds = default_trans_bounds();
  const auto rot_bounds = default_rot_bounds();

  CsvWriter metrics((fs::path(out_dir) / "metrics.csv").string());
  metrics.row({"scene", "seed", "tp_count", "fp_total", "fp_accepted",
               "fp_rejection_ratio", "completion_ratio", "trials", "errors",
               "frames", "hit_trial_cap", "accuracy_20cm_45deg"});
  for (const auto& out : outcomes) {
    const AccuracyGrid grid = pose_accuracy(out.tp, trans_bounds, rot_bounds,
                                            cfg.rotation_error_mode);
    const double ratio = fp_rejection_ratio(out.fp);
    fp_ratio_sum += ratio;
    completion_sum += out.completion;
    all_tp.insert(all_tp.end(), out.tp.begin(), out.tp.end());
    all_fp.merge(out.fp);
    metrics.row({std::to_string(out.scene), std::to_string(out.seed),
                 std::to_string(out.tp.size()), std::to_string(out.fp.total),
                 std::to_string(out.fp.accepted), fmt_double(ratio),
                 fmt_double(out.completion), std::to_string(out.trials),
                 std::to_string(out.errors), std::to_string(out.frames),
                 out.hit_cap ? "1" : "0",
                 fmt_double(grid.at(trans_bounds.size() - 1,
                                    rot_bounds.size() - 1))});
  }
  const AccuracyGrid pooled =
      pose_accuracy(all_tp, trans_bounds, rot_bounds, cfg.rotation_error_mode);
  metrics.row({"all", "all", std::to_string(all_tp.size()),
               std::to_string(all_fp.total), std::to_string(all_fp.accepted),
               fmt_double(fp_ratio_sum / outcomes.size()),
               fmt_double(completion_sum / outcomes.size()), "-1", "-1", "-1",
               "0",
               fmt_double(pooled.at(trans_bounds.size() - 1,
                                    rot_bounds.size() - 1))});

  // Accuracy-vs-error-bound curves over all runs pooled.
  CsvWriter curve((fs::path(out_dir) / "accuracy_curve.csv").string());
  curve.row({"trans_bound_m", "rot_bound_deg", "accuracy"});
  for (std::size_t ti = 0; ti < trans_bounds.size(); ++ti) {
    for (std::size_t ri = 0; ri < rot_bounds.size(); ++ri) {
      curve.row({fmt_double(trans_bounds[ti]),
                 fmt_double(rot_bounds[ri] * 180.0 / std::numbers::pi),
                 fmt_double(pooled.at(ti, ri))});
    }
  }

  std::cout << "runs: " << outcomes.size()
            << "  mean_fp_rejection: " << fmt_double(fp_ratio_sum / outcomes.size());
  if (cfg.mode == RunMode::kSequential) {
    std::cout << "  mean_completion: "
              << fmt_double(completion_sum / outcomes.size());
  }
  std::cout << "  accuracy(20cm,45deg): "
            << fmt_double(pooled.at(trans_bounds.size() - 1, rot_bounds.size() - 1))
            << "\n";
  (void)debug_dumps;
  return 0;
}

int cmd_validate(const ExperimentConfig& cfg) {
  const auto violations = validate_config(cfg);
  for (const auto& note : reference_default_notes(cfg)) {
    std::cout << note << "\n";
  }
  if (violations.empty()) {
    std::cout << "config OK: no violations\n";
  } else {
    for (const auto& v : violations) std::cout << "violation: " << v << "\n";
  }
  return 0;
}

int cmd_render_debug(const ExperimentConfig& cfg, const std::string& out_dir,
                     std::uint64_t seed) {
  fs::create_directories(out_dir);
  set_max_threads(cfg.threads);

  const SequenceConfig& seq = cfg.sequence;
  WorldState world =
      generate_scene(cfg.models, seq.object_count, seq.table, seq.bins,
                     seq.tilt_sigma, substream(seed, "scene"));
  const ObjectModel table_model = make_table_model(seq.table);
  const Observation obs =
      observe(world, cfg.models, table_model, seq.params.camera, seq.detector,
              seq.depth_noise_sigma, substream(seed, "frame", 0));

  write_depth_pgm16((fs::path(out_dir) / "depth.pgm").string(), obs.depth);
  write_cloud_ply((fs::path(out_dir) / "cloud.ply").string(), obs.cloud);
  for (int i = 0; i < cfg.registry.size(); ++i) {
    write_mesh_ply((fs::path(out_dir) / ("model_" + cfg.registry.at(i).name +
                                         ".ply")).string(),
                   cfg.models[i].mesh);
  }

  CsvWriter csv((fs::path(out_dir) / "detections.csv").string());
  csv.row({"det_index", "true_object", "min_x", "min_y", "max_x", "max_y",
           "box_confidence", "top1_label", "top1_conf", "top2_label",
           "top2_conf", "top3_label", "top3_conf"});
  for (std::size_t d = 0; d < obs.detections.size(); ++d) {
    const Detection& det = obs.detections[d];
    auto ranked = threshold_proposals(det, 1e-9);
    std::vector<std::string> row = {
        std::to_string(d), std::to_string(det.true_object),
        fmt_double(det.bbox.min_x), fmt_double(det.bbox.min_y),
        fmt_double(det.bbox.max_x), fmt_double(det.bbox.max_y),
        fmt_double(det.box_confidence)};
    for (std::size_t k = 0; k < 3; ++k) {
      if (k < ranked.size()) {
        row.push_back(cfg.registry.at(ranked[k].label).name);
        row.push_back(fmt_double(ranked[k].confidence));
      } else {
        row.push_back("");
        row.push_back("");
      }
    }
    csv.row(row);
  }
  std::cout << "wrote depth.pgm, cloud.ply, detections.csv and model meshes to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential tabletop scene estimation and sorting simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  std::string mode_flag;
  int seeds_flag = 0;
  std::uint64_t debug_seed = 1;
  bool debug_dumps = false;
  int threads_flag = -1;
  int jobs_flag = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (JSON)");
    cmd->add_option("--override", overrides,
                    "override a config field, e.g. filter.particles=100");
    cmd->add_option("--mode", mode_flag, "single_scene or sequential");
    cmd->add_option("--seeds", seeds_flag, "use seeds 1..N");
    cmd->add_option("--threads", threads_flag, "worker threads (0 = hardware)");
    cmd->add_option("--jobs", jobs_flag, "parallel run slots");
  };

  CLI::App* run = app.add_subcommand("run", "execute the configured experiment");
  add_common(run);
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_flag("--debug-dumps", debug_dumps, "write extra debug artifacts");

  CLI::App* validate = app.add_subcommand("validate", "check a config file");
  add_common(validate);

  CLI::App* rdebug =
      app.add_subcommand("render-debug", "dump one frame's depth/cloud/detections");
  add_common(rdebug);
  rdebug->add_option("--out-dir", out_dir, "output directory");
  rdebug->add_option("--seed", debug_seed, "scene/frame seed");

  CLI11_PARSE(app, argc, argv);

  try {
    // Flag > file > built-in default.
    std::vector<std::string> effective = overrides;
    if (!mode_flag.empty()) effective.push_back("mode=\"" + mode_flag + "\"");
    if (seeds_flag > 0) {
      std::string list = "[";
      for (int i = 1; i <= seeds_flag; ++i) {
        if (i > 1) list += ",";
        list += std::to_string(i);
      }
      list += "]";
      effective.push_back("seeds=" + list);
    }
    if (threads_flag >= 0) {
      effective.push_back("threads=" + std::to_string(threads_flag));
    }
    if (jobs_flag > 0) effective.push_back("jobs=" + std::to_string(jobs_flag));

    ExperimentConfig cfg =
        config_path.empty()
            ? parse_config_text(default_config_json(), effective)
            : load_config(config_path, effective);

    if (app.got_subcommand(run) || app.got_subcommand(rdebug)) {
      const auto violations = validate_config(cfg);
      if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "config: " << v << "\n";
        return 1;
      }
    }

    if (app.got_subcommand(validate)) return cmd_validate(cfg);
    if (app.got_subcommand(rdebug)) return cmd_render_debug(cfg, out_dir, debug_seed);
    return cmd_run(cfg, out_dir, debug_dumps);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
