#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "groundsight/core/error.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/core/random.hpp"
#include "groundsight/plane/segmentation.hpp"
#include "groundsight/synth/benchmark.hpp"
#include "groundsight/synth/metrics.hpp"
#include "groundsight/synth/scene.hpp"

using namespace groundsight;
using namespace groundsight::synth;
using plane::PointLabel;

namespace {

SceneSpec quiet_spec() {
  SceneSpec s;
  s.walls = 0;
  s.box_count = 0;
  s.noise_sigma = 0.0;
  s.outlier_fraction = 0.0;
  s.max_points = 20000;
  s.attitude = ImuAttitude(0.2, -0.1);
  return s;
}

// Brute-force IoU over the included points.
double iou_oracle(const Labels& p, const Labels& t, PointLabel c, const std::vector<std::uint8_t>& inc) {
  std::size_t both = 0, any = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!inc.empty() && !inc[i]) continue;
    both += p[i] == c && t[i] == c;
    any += p[i] == c || t[i] == c;
  }
  return any == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(any);
}

}  // namespace

TEST(Scene, DeterministicPerSeed) {
  SceneSpec s;
  s.max_points = 20000;
  s.seed = 4;
  const auto a = synth_scene(s);
  const auto b = synth_scene(s);
  EXPECT_EQ(a.raw.points, b.raw.points);
  EXPECT_EQ(a.labels, b.labels);
  s.seed = 5;
  EXPECT_NE(synth_scene(s).raw.points, a.raw.points);
}

TEST(Scene, BudgetAndArraysAligned) {
  SceneSpec s;
  s.max_points = 30000;
  s.seed = 2;
  const auto sc = synth_scene(s);
  EXPECT_LE(sc.raw.size(), 30000u);
  EXPECT_GT(sc.raw.size(), 25000u);
  EXPECT_EQ(sc.labels.size(), sc.raw.size());
  EXPECT_EQ(sc.tags.size(), sc.raw.size());
  EXPECT_EQ(sc.true_height.size(), sc.raw.size());
  std::size_t outliers = 0;
  for (const auto& t : sc.tags) outliers += t.surface == Surface::outlier;
  EXPECT_NEAR(static_cast<double>(outliers) / sc.raw.size(), 0.02, 0.002);
  EXPECT_EQ(sc.raw.frame, Frame::raw);
}

TEST(Scene, LabelsFollowSurfacesAndHeights) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    SceneSpec s;
    s.max_points = 20000;
    s.noise_sigma = 0.0;
    s.seed = rng.next();
    const auto sc = synth_scene(s);
    const Rotation3 a = alignment_rotation(sc.attitude);
    EXPECT_LE(std::abs(sc.attitude.pitch()) * 180 / std::numbers::pi, 20.0);
    for (std::size_t i = 0; i < sc.raw.size(); ++i) {
      const auto surf = sc.tags[i].surface;
      ASSERT_EQ(sc.labels[i] == PointLabel::ground, surf == Surface::floor);
      const Point3 p = a.apply(sc.raw.points[i]);
      // Noise-free points sit exactly at their recorded height.
      ASSERT_NEAR(p.y + s.camera_height, sc.true_height[i], 1e-9);
      if (surf == Surface::floor) {
        ASSERT_EQ(sc.true_height[i], 0.0);
      }
      if (surf == Surface::box_top) {
        ASSERT_NEAR(sc.true_height[i], sc.boxes[static_cast<std::size_t>(sc.tags[i].object)].height, 1e-12);
      }
    }
  }
}

TEST(Scene, NoiseGrowsWithSigma) {
  double last = -1;
  for (double sigma : {0.0, 0.002, 0.01, 0.03}) {
    SceneSpec s = quiet_spec();
    s.noise_sigma = sigma;
    s.seed = 1;
    const auto sc = synth_scene(s);
    const Rotation3 a = alignment_rotation(sc.attitude);
    double ss = 0;
    for (const auto& q : sc.raw.points) {
      const double r = a.apply(q).y + s.camera_height;
      ss += r * r;
    }
    const double rms = std::sqrt(ss / sc.raw.size());
    EXPECT_GT(rms, last);
    last = rms;
  }
}

TEST(Scene, ExplicitBoxesArePlaced) {
  SceneSpec s = quiet_spec();
  s.boxes = {Box{0.0, 2.0, 0.5, 0.5, 0.1}, Box{1.0, 3.0, 0.4, 0.4, 0.02}};
  const auto sc = synth_scene(s);
  ASSERT_EQ(sc.boxes.size(), 2u);
  std::size_t tops[2] = {0, 0};
  for (const auto& t : sc.tags) {
    if (t.surface == Surface::box_top) ++tops[t.object];
  }
  ASSERT_GT(tops[0], 50u);
  // Point counts follow the top areas, 0.25 vs 0.16 square meters.
  EXPECT_NEAR(static_cast<double>(tops[1]) / tops[0], 0.16 / 0.25, 0.15);
  SceneSpec bad = quiet_spec();
  bad.density = -1;
  EXPECT_THROW(synth_scene(bad), Error);
}

TEST(Scene, FloorOnlySegmentsExactly) {
  const auto sc = synth_scene(quiet_spec());
  const auto res = plane::segment_ground(sc.raw, sc.attitude);
  EXPECT_EQ(res.labels, sc.labels);
  EXPECT_LT(normal_angle(res.plane, sc.plane), 1e-9);
  EXPECT_NEAR(res.plane.offset(), 0.6, 1e-9);
  const auto m = evaluate(sc, res.labels, res.plane, 0.05, 0.0);
  EXPECT_EQ(m.iou_ground, 1.0);
  EXPECT_EQ(m.miou, 1.0);  // no obstacles on either side
  EXPECT_LT(m.d_err_m, 1e-9);
}

TEST(Metrics, IouMatchesOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.index(50);
    Labels p(n), t(n);
    std::vector<std::uint8_t> inc(rng.index(2) ? n : 0);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = rng.index(2) ? PointLabel::ground : PointLabel::obstacle;
      t[i] = rng.index(3) ? p[i] : (rng.index(2) ? PointLabel::ground : PointLabel::obstacle);
    }
    for (auto& v : inc) v = rng.index(4) != 0;
    for (auto c : {PointLabel::ground, PointLabel::obstacle}) {
      EXPECT_DOUBLE_EQ(iou(p, t, c, inc), iou_oracle(p, t, c, inc));
    }
    EXPECT_DOUBLE_EQ(miou(p, t, inc),
                     0.5 * (iou_oracle(p, t, PointLabel::ground, inc) + iou_oracle(p, t, PointLabel::obstacle, inc)));
  }
  try {
    iou(Labels(2), Labels(3), PointLabel::ground);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(Metrics, EvaluationBandExcludesThresholdHeights) {
  SceneSpec s = quiet_spec();
  s.boxes = {Box{0.0, 2.0, 0.5, 0.5, 0.05}, Box{1.0, 3.0, 0.4, 0.4, 0.2}};
  const auto sc = synth_scene(s);
  const auto inc = evaluation_mask(sc, 0.05, 0.003);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    EXPECT_EQ(inc[i] != 0, std::abs(sc.true_height[i] - 0.05) > 0.003);
  }
}

TEST(Benchmark, ReportsEveryScene) {
  SceneSpec base;
  base.max_points = 20000;
  const auto specs = seeded_specs(base, 10, 3);
  ASSERT_EQ(specs.size(), 3u);
  EXPECT_EQ(specs[2].seed, 12u);
  const auto rep = run_benchmark(specs);
  ASSERT_EQ(rep.scenes.size(), 3u);
  EXPECT_EQ(rep.failed, 0u);
  const auto j = to_json(rep);
  ASSERT_EQ(j["scenes"].size(), 3u);
  for (const char* key : {"seed", "ok", "points", "miou", "iou_ground", "normal_err_deg", "d_err_m",
                          "evaluated_points", "converged", "iterations", "timings_ms"}) {
    EXPECT_TRUE(j["scenes"][0].contains(key)) << key;
  }
  for (const char* key : {"scenes", "failed", "miou", "iou_ground", "normal_err_deg", "d_err_m", "timings_ms"}) {
    EXPECT_TRUE(j["aggregate"].contains(key)) << key;
  }
  EXPECT_GE(j["aggregate"]["miou"]["max"].get<double>(), j["aggregate"]["miou"]["min"].get<double>());
  EXPECT_GT(rep.iou_ground.mean, 0.9);
}

TEST(Benchmark, FailingSceneIsRecorded) {
  SceneSpec base = quiet_spec();
  base.max_points = 3;
  const auto rep = run_benchmark({base});
  EXPECT_EQ(rep.failed, 1u);
  EXPECT_FALSE(rep.scenes[0].ok);
  EXPECT_FALSE(rep.scenes[0].error.empty());
}
