#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "groundsight/core/camera.hpp"
#include "groundsight/core/error.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/core/io.hpp"
#include "groundsight/mapping/grid.hpp"
#include "test_support.hpp"

using namespace groundsight;
using namespace groundsight::mapping;
using plane::PointLabel;

namespace {

GridConfig small_grid() {
  GridConfig g;
  g.resolution = 0.1;
  g.origin_x = -1.0;
  g.origin_z = 0.0;
  g.width_cells = 20;
  g.height_cells = 30;
  return g;
}

}  // namespace

TEST(Grid, CellOfHalfOpenBounds) {
  const auto g = small_grid();
  EXPECT_EQ(cell_of(g, -1.0, 0.0), (CellIndex{0, 0}));
  EXPECT_EQ(cell_of(g, -0.95, 0.25), (CellIndex{0, 2}));
  EXPECT_EQ(cell_of(g, 0.0, 2.95), (CellIndex{10, 29}));
  EXPECT_FALSE(cell_of(g, 1.0, 1.0).has_value());
  EXPECT_FALSE(cell_of(g, -1.0001, 1.0).has_value());
  EXPECT_FALSE(cell_of(g, 0.0, 3.0).has_value());
  EXPECT_FALSE(cell_of(g, std::nan(""), 1.0).has_value());
}

TEST(Grid, ValidateRejectsBadConfig) {
  auto g = small_grid();
  g.resolution = 0.0;
  EXPECT_THROW(g.validate(), Error);
  g = small_grid();
  g.width_cells = 0;
  EXPECT_THROW(g.validate(), Error);
}

TEST(Occupancy, MatchesOracleWithObstaclePrecedence) {
  gs_test::Rng rng(12);
  const auto g = small_grid();
  for (int trial = 0; trial < 50; ++trial) {
    PointCloud cloud;
    std::vector<PointLabel> labels;
    const std::size_t n = 1 + rng.index(400);
    for (std::size_t i = 0; i < n; ++i) {
      cloud.points.push_back({rng.uniform(-1.3, 1.3), rng.uniform(-1, 1), rng.uniform(-0.3, 3.3)});
      labels.push_back(rng.index(3) == 0 ? PointLabel::obstacle : PointLabel::ground);
    }
    std::map<std::pair<int, int>, bool> any_obstacle;
    for (std::size_t i = 0; i < n; ++i) {
      const double fi = std::floor((cloud.points[i].x + 1.0) / 0.1);
      const double fj = std::floor(cloud.points[i].z / 0.1);
      if (fi < 0 || fi >= 20 || fj < 0 || fj >= 30) continue;
      auto& slot = any_obstacle[{static_cast<int>(fi), static_cast<int>(fj)}];
      slot = slot || labels[i] == PointLabel::obstacle;
    }
    const auto grid = project_occupancy(labels, cloud, g);
    for (int j = 0; j < 30; ++j) {
      for (int i = 0; i < 20; ++i) {
        const auto it = any_obstacle.find({i, j});
        const Occupancy want = it == any_obstacle.end() ? Occupancy::unknown
                               : it->second             ? Occupancy::occupied
                                                        : Occupancy::free;
        ASSERT_EQ(grid.at({i, j}), want) << trial << " " << i << "," << j;
      }
    }
  }
}

TEST(Occupancy, LengthMismatchThrows) {
  PointCloud c{{{0, 0, 1}}};
  try {
    project_occupancy(std::vector<PointLabel>{}, c, small_grid());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(GroundHit, LiesOnPlaneAndProjectsBack) {
  const CameraIntrinsics intr{300, 300, 159.5, 119.5, 320, 240};
  const auto plane = PlaneModel::from_coefficients(0, 1, 0, 0.6);
  gs_test::Rng rng(4);
  int hits = 0;
  for (int i = 0; i < 500; ++i) {
    const ImuAttitude att(rng.uniform(-0.4, 0.4), rng.uniform(-0.3, 0.3));
    const double u = rng.uniform(0, 320);
    const double v = rng.uniform(0, 240);
    const auto hit = ground_hit(u, v, plane, intr, att);
    if (!hit) continue;
    ++hits;
    EXPECT_NEAR(hit->y, -0.6, 1e-9);
    const auto px = project_to_pixel(alignment_rotation(att).apply_transposed(*hit), intr);
    ASSERT_TRUE(px.has_value());
    EXPECT_NEAR(px->u, u, 1e-6);
    EXPECT_NEAR(px->v, v, 1e-6);
  }
  EXPECT_GT(hits, 100);
  // Level camera looking at the horizon line or above never hits the floor.
  EXPECT_FALSE(ground_hit(159.5, 119.5, plane, intr, ImuAttitude()).has_value());
  EXPECT_FALSE(ground_hit(100, 10, plane, intr, ImuAttitude()).has_value());
}

TEST(Traversability, MatchesPerPixelOracle) {
  const CameraIntrinsics intr{80, 80, 39.5, 29.5, 80, 60};
  const auto plane = PlaneModel::from_coefficients(0, 1, 0, 0.6);
  const ImuAttitude att(0.3, 0.05);
  GridConfig g;
  g.resolution = 0.2;
  g.origin_x = -2.0;
  g.origin_z = 0.0;
  g.width_cells = 20;
  g.height_cells = 25;
  gs_test::Rng rng(8);
  BinaryMask mask(80, 60);
  for (auto& b : mask.data()) b = rng.index(10) == 0 ? 0 : 1;

  std::vector<int> seen(20 * 25, -1);  // -1 unknown, 1 drivable, 0 anomaly
  for (int v = 0; v < 60; ++v) {
    for (int u = 0; u < 80; ++u) {
      const auto hit = ground_hit(u, v, plane, intr, att);
      if (!hit) continue;
      const auto cell = cell_of(g, hit->x, hit->z);
      if (!cell) continue;
      int& s = seen[static_cast<std::size_t>(cell->j * 20 + cell->i)];
      s = s == -1 ? mask.at(u, v) : std::min(s, static_cast<int>(mask.at(u, v)));
    }
  }
  const auto grid = traversability_from_mask(mask, plane, intr, att, g);
  std::size_t known = 0;
  for (int j = 0; j < 25; ++j) {
    for (int i = 0; i < 20; ++i) {
      const int s = seen[static_cast<std::size_t>(j * 20 + i)];
      const Traversability want = s < 0 ? Traversability::unknown
                                  : s   ? Traversability::drivable
                                        : Traversability::anomaly;
      EXPECT_EQ(grid.at({i, j}), want);
      known += s >= 0;
    }
  }
  EXPECT_GT(known, 20u);
  EXPECT_THROW(traversability_from_mask(BinaryMask(10, 10), plane, intr, att, g), Error);
}

TEST(Render, EncodingsAndSidecar) {
  auto g = small_grid();
  g.width_cells = 3;
  g.height_cells = 1;
  OccupancyGrid occ(g);
  occ.at({0, 0}) = Occupancy::free;
  occ.at({1, 0}) = Occupancy::occupied;
  const auto img = to_image(occ);
  EXPECT_EQ(img.at(0, 0), 255);
  EXPECT_EQ(img.at(1, 0), 0);
  EXPECT_EQ(img.at(2, 0), 127);

  TraversabilityGrid tr(g);
  tr.at({2, 0}) = Traversability::anomaly;
  tr.at({1, 0}) = Traversability::drivable;
  const auto timg = to_image(tr);
  EXPECT_EQ(timg.at(0, 0), 127);
  EXPECT_EQ(timg.at(1, 0), 255);
  EXPECT_EQ(timg.at(2, 0), 0);

  const auto dir = gs_test::temp_dir("grid");
  write_grid(dir / "o.pgm", dir / "o.json", occ);
  EXPECT_EQ(io::read_pgm8(dir / "o.pgm"), img);
  const auto j = nlohmann::json::parse(gs_test::read_file(dir / "o.json"));
  EXPECT_EQ(j["kind"], "occupancy");
  EXPECT_EQ(j["counts"]["occupied"], 1);
  EXPECT_EQ(j["counts"]["unknown"], 1);
  const auto back = grid_config_from_json(j["grid"]);
  EXPECT_EQ(back.width_cells, 3);
  EXPECT_DOUBLE_EQ(back.resolution, 0.1);
  EXPECT_THROW(grid_config_from_json(nlohmann::json{{"resolution", 1}}), Error);
}
