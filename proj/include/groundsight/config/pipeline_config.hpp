#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "groundsight/collage/perlin.hpp"
#include "groundsight/core/types.hpp"
#include "groundsight/mapping/grid.hpp"
#include "groundsight/masking/ground_mask.hpp"
#include "groundsight/mosts/loss.hpp"
#include "groundsight/mosts/model.hpp"
#include "groundsight/plane/segmentation.hpp"
#include "groundsight/synth/scene.hpp"

namespace groundsight::config {

struct BenchSettings {
  std::uint64_t seed = 1;
  std::size_t count = 20;
};

/// Every tunable of the pipeline. JSON sections: voxel, radius, ransac,
/// segmentation, masking, grid, camera, loss, mosts, perlin, synth, bench.
struct PipelineConfig {
  plane::SegmentationConfig segmentation;
  masking::MaskingParams masking;
  mapping::GridConfig grid;
  CameraIntrinsics camera{615.0, 615.0, 319.5, 239.5, 640, 480};
  mosts::ComboLossParams loss;
  mosts::ToyMostsConfig mosts;
  collage::PerlinParams perlin;
  synth::SceneSpec synth;
  BenchSettings bench;

  /// Throws Config naming the offending section.
  void validate() const;
};

/// Fully materialized: every field appears with its current value.
nlohmann::json to_json(const PipelineConfig& cfg);

/// Keys missing from `j` keep their defaults; unknown keys and wrongly typed
/// values throw Config. The result is validated.
PipelineConfig from_json(const nlohmann::json& j);

/// "section.key=value"; value is parsed as JSON when possible, else taken as a
/// string. Throws Config for malformed text or unknown keys.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Defaults, then the file (if non-empty), then the overrides in order.
PipelineConfig load(const std::filesystem::path& file, const std::vector<std::string>& overrides = {});

}  // namespace groundsight::config
