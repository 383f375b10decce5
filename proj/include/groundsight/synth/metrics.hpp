#pragma once

#include <cstdint>
#include <vector>

#include "groundsight/plane/plane_fit.hpp"
#include "groundsight/synth/scene.hpp"

namespace groundsight::synth {

using Labels = std::vector<plane::PointLabel>;

/// |pred = c and truth = c| / |pred = c or truth = c| over the points with
/// include[i] != 0 (all points when include is empty). An empty union gives 1.
/// Throws LengthMismatch.
double iou(const Labels& pred, const Labels& truth, plane::PointLabel cls,
           const std::vector<std::uint8_t>& include = {});

/// Mean of the ground and obstacle IoU.
double miou(const Labels& pred, const Labels& truth, const std::vector<std::uint8_t>& include = {});

/// Excludes points whose noise-free height lies within +-band of the
/// classification threshold, where labels are ill-defined under noise.
std::vector<std::uint8_t> evaluation_mask(const LabeledScene& scene, double threshold, double band);

struct SceneMetrics {
  double miou = 0.0;
  double iou_ground = 0.0;
  double normal_err_deg = 0.0;
  double d_err_m = 0.0;
  std::size_t evaluated = 0;
};

SceneMetrics evaluate(const LabeledScene& scene, const Labels& pred, const PlaneModel& estimate,
                      double threshold, double band);

}  // namespace groundsight::synth
