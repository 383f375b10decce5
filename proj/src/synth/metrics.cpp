#include "groundsight/synth/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "groundsight/core/error.hpp"
#include "groundsight/core/geometry.hpp"

namespace groundsight::synth {

double iou(const Labels& pred, const Labels& truth, plane::PointLabel cls, const std::vector<std::uint8_t>& include) {
  if (pred.size() != truth.size() || (!include.empty() && include.size() != pred.size())) {
    throw Error(ErrorKind::LengthMismatch, "label vectors differ in length: " + std::to_string(pred.size()) +
                                               " vs " + std::to_string(truth.size()));
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!include.empty() && include[i] == 0) continue;
    const bool p = pred[i] == cls;
    const bool t = truth[i] == cls;
    inter += (p && t) ? 1 : 0;
    uni += (p || t) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double miou(const Labels& pred, const Labels& truth, const std::vector<std::uint8_t>& include) {
  return 0.5 * (iou(pred, truth, plane::PointLabel::ground, include) +
                iou(pred, truth, plane::PointLabel::obstacle, include));
}

std::vector<std::uint8_t> evaluation_mask(const LabeledScene& scene, double threshold, double band) {
  std::vector<std::uint8_t> include(scene.true_height.size(), 1);
  if (band <= 0.0) return include;
  for (std::size_t i = 0; i < include.size(); ++i) {
    if (std::abs(scene.true_height[i] - threshold) <= band) include[i] = 0;
  }
  return include;
}

SceneMetrics evaluate(const LabeledScene& scene, const Labels& pred, const PlaneModel& estimate, double threshold,
                      double band) {
  const auto include = evaluation_mask(scene, threshold, band);
  SceneMetrics m;
  m.iou_ground = iou(pred, scene.labels, plane::PointLabel::ground, include);
  m.miou = miou(pred, scene.labels, include);
  m.normal_err_deg = normal_angle(estimate, scene.plane) * 180.0 / std::numbers::pi;
  m.d_err_m = std::abs(estimate.offset() - scene.plane.offset());
  for (auto v : include) m.evaluated += v;
  return m;
}

}  // namespace groundsight::synth
