#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sceneest/harness.hpp"
#include "sceneest/label.hpp"
#include "sceneest/mesh.hpp"

namespace sceneest {

// Configuration failure with the offending field path.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& field_path, const std::string& what)
      : std::runtime_error("config error at '" + field_path + "': " + what),
        field(field_path) {}
  std::string field;
};

enum class RunMode { kSingleScene, kSequential };

struct ExperimentConfig {
  RunMode mode = RunMode::kSingleScene;
  std::vector<std::uint64_t> seeds;
  int scene_count = 1;           // single-scene mode: scenes per seed
  std::uint64_t scene_seed_base = 1234;  // fixes scene identity across seeds

  LabelRegistry registry;
  std::vector<ObjectModel> models;  // indexed by label id

  SequenceConfig sequence;  // camera, filter, world and noise parameters

  RotationErrorMode rotation_error_mode = RotationErrorMode::kPerAxisRpy;
  int threads = 0;  // 0 = hardware concurrency
  int jobs = 1;     // parallel (scene, seed) worker slots
};

// Parses and structurally validates a config file (JSON). `overrides` are
// dotted key paths applied on top of the file, e.g. "filter.particles=625".
// Throws ConfigError on missing/ill-typed fields.
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides = {});

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides = {});

// Type-invariant checks over a parsed config; returns every violation.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Lines marking values that match the published reference defaults
// (particle count, iterations, epsilon, sigma_c, action-model sigmas).
std::vector<std::string> reference_default_notes(const ExperimentConfig& cfg);

// The built-in experiment: six labels over three primitive shapes, a table
// viewed obliquely from above, bins outside the camera frustum.
std::string default_config_json();

}  // namespace sceneest
