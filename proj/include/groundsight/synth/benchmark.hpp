#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "groundsight/plane/segmentation.hpp"
#include "groundsight/synth/metrics.hpp"
#include "groundsight/synth/scene.hpp"

namespace groundsight::synth {

struct SceneReport {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when the pipeline threw
  std::size_t points = 0;
  SceneMetrics metrics;
  bool converged = false;
  int iterations = 0;
  std::vector<plane::StageTiming> timings;
};

struct Summary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BenchmarkReport {
  std::vector<SceneReport> scenes;
  std::size_t failed = 0;
  Summary miou, iou_ground, normal_err_deg, d_err_m;
  /// Mean per-stage milliseconds over the successful scenes.
  std::vector<plane::StageTiming> mean_timings;
};

/// `count` copies of `base` with seeds seed, seed + 1, ...
std::vector<SceneSpec> seeded_specs(const SceneSpec& base, std::uint64_t seed, std::size_t count);

/// Segments every scene and scores it against the generator's labels. The
/// exclusion band around the classification threshold is each scene's noise
/// sigma. Pipeline errors are recorded per scene.
BenchmarkReport run_benchmark(const std::vector<SceneSpec>& specs, const plane::SegmentationConfig& config = {});

/// {scenes: [{seed, miou, iou_ground, normal_err_deg, d_err_m, timings_ms,
/// converged, ...}], aggregate: {...}}. Timing fields live under
/// "timings_ms" keys only.
nlohmann::json to_json(const BenchmarkReport& report);

}  // namespace groundsight::synth
