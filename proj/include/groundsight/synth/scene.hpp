#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "groundsight/core/types.hpp"
#include "groundsight/plane/plane_fit.hpp"

namespace groundsight::synth {

/// Axis-aligned box resting on the floor, in the gravity-aligned frame.
struct Box {
  double center_x = 0.0;
  double center_z = 2.0;
  double size_x = 0.4;
  double size_z = 0.4;
  double height = 0.2;
};

/// Scene in the gravity-aligned frame with the camera at the origin looking
/// along +z and the floor at y = -camera_height.
struct SceneSpec {
  double floor_min_x = -3.0;
  double floor_max_x = 3.0;
  double floor_min_z = 0.0;
  double floor_max_z = 6.0;
  double camera_height = 0.6;

  /// 0: none, 1: back wall at z = floor_max_z, 2: also a side wall at x = floor_min_x.
  int walls = 2;
  double wall_height = 2.0;

  /// Boxes always placed, then box_count random ones.
  std::vector<Box> boxes;
  int box_count = 5;
  double box_min_height = 0.02;
  double box_max_height = 0.5;
  double box_min_size = 0.2;
  double box_max_size = 0.6;

  double density = 5000.0;      // surface points per square meter
  std::size_t max_points = 300000;
  double noise_sigma = 0.003;   // meters, along the viewing ray
  double outlier_fraction = 0.02;

  /// Fixed attitude, or pitch and roll drawn uniformly from +-max_tilt_deg.
  std::optional<ImuAttitude> attitude;
  double max_tilt_deg = 20.0;

  std::uint64_t seed = 0;

  void validate() const;
};

enum class Surface : std::uint8_t { floor, wall, box_top, box_side, outlier };

struct PointTag {
  Surface surface = Surface::floor;
  std::int16_t object = 0;  // wall or box index; 0 otherwise
};

struct LabeledScene {
  /// Camera-frame cloud: the aligned scene rotated by the inverse attitude.
  PointCloud raw;
  /// Floor points are ground, everything else (outliers included) obstacle.
  std::vector<plane::PointLabel> labels;
  std::vector<PointTag> tags;
  /// Noise-free height of each point's generating surface sample above the
  /// floor; outliers carry their sampled height.
  std::vector<double> true_height;
  /// In the aligned frame: n = (0, 1, 0), d = camera_height.
  PlaneModel plane;
  ImuAttitude attitude;
  std::vector<Box> boxes;
};

LabeledScene synth_scene(const SceneSpec& spec);

}  // namespace groundsight::synth
