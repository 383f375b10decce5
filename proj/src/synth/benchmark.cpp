#include "groundsight/synth/benchmark.hpp"

#include <algorithm>

#include "groundsight/core/error.hpp"

namespace groundsight::synth {
namespace {

Summary summarize(const std::vector<double>& v) {
  if (v.empty()) return {};
  Summary s{0.0, v.front(), v.front()};
  for (double x : v) {
    s.mean += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(v.size());
  return s;
}

nlohmann::json summary_json(const Summary& s) { return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}}; }

nlohmann::json timings_json(const std::vector<plane::StageTiming>& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& st : t) j[st.stage] = st.ms;
  return j;
}

}  // namespace

std::vector<SceneSpec> seeded_specs(const SceneSpec& base, std::uint64_t seed, std::size_t count) {
  std::vector<SceneSpec> specs(count, base);
  for (std::size_t i = 0; i < count; ++i) specs[i].seed = seed + i;
  return specs;
}

BenchmarkReport run_benchmark(const std::vector<SceneSpec>& specs, const plane::SegmentationConfig& config) {
  if (specs.empty()) throw Error(ErrorKind::InvalidArgument, "benchmark needs at least one scene");
  config.validate();

  BenchmarkReport report;
  std::vector<double> miou, iou_g, nerr, derr;
  for (const auto& spec : specs) {
    SceneReport r;
    r.seed = spec.seed;
    try {
      const LabeledScene scene = synth_scene(spec);
      r.points = scene.raw.size();
      const auto seg = plane::segment_ground(scene.raw, scene.attitude, config);
      r.metrics = evaluate(scene, seg.labels, seg.plane, config.classify_threshold, spec.noise_sigma);
      r.converged = seg.converged;
      r.iterations = seg.iterations;
      r.timings = seg.timings;
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
    }
    if (r.ok) {
      miou.push_back(r.metrics.miou);
      iou_g.push_back(r.metrics.iou_ground);
      nerr.push_back(r.metrics.normal_err_deg);
      derr.push_back(r.metrics.d_err_m);
      if (report.mean_timings.empty()) {
        report.mean_timings = r.timings;
        for (auto& t : report.mean_timings) t.ms = 0.0;
      }
      for (std::size_t i = 0; i < r.timings.size() && i < report.mean_timings.size(); ++i) {
        report.mean_timings[i].ms += r.timings[i].ms;
      }
    } else {
      ++report.failed;
    }
    report.scenes.push_back(std::move(r));
  }
  if (!miou.empty()) {
    for (auto& t : report.mean_timings) t.ms /= static_cast<double>(miou.size());
  }
  report.miou = summarize(miou);
  report.iou_ground = summarize(iou_g);
  report.normal_err_deg = summarize(nerr);
  report.d_err_m = summarize(derr);
  return report;
}

nlohmann::json to_json(const BenchmarkReport& report) {
  nlohmann::json scenes = nlohmann::json::array();
  for (const auto& r : report.scenes) {
    nlohmann::json j{{"seed", r.seed}, {"ok", r.ok}, {"points", r.points}};
    if (r.ok) {
      j["miou"] = r.metrics.miou;
      j["iou_ground"] = r.metrics.iou_ground;
      j["normal_err_deg"] = r.metrics.normal_err_deg;
      j["d_err_m"] = r.metrics.d_err_m;
      j["evaluated_points"] = r.metrics.evaluated;
      j["converged"] = r.converged;
      j["iterations"] = r.iterations;
      j["timings_ms"] = timings_json(r.timings);
    } else {
      j["error"] = r.error;
    }
    scenes.push_back(std::move(j));
  }
  nlohmann::json aggregate{{"scenes", report.scenes.size()},
                           {"failed", report.failed},
                           {"miou", summary_json(report.miou)},
                           {"iou_ground", summary_json(report.iou_ground)},
                           {"normal_err_deg", summary_json(report.normal_err_deg)},
                           {"d_err_m", summary_json(report.d_err_m)},
                           {"timings_ms", timings_json(report.mean_timings)},
                           {"evaluation", "points within one noise sigma of the classification threshold are excluded"}};
  return {{"scenes", std::move(scenes)}, {"aggregate", std::move(aggregate)}};
}

}  // namespace groundsight::synth
