#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "groundsight/core/error.hpp"
#include "groundsight/core/parallel.hpp"
#include "groundsight/filtering/kdtree.hpp"
#include "groundsight/filtering/radius_filter.hpp"
#include "groundsight/filtering/voxel_grid.hpp"
#include "test_support.hpp"

using namespace groundsight;
using namespace groundsight::filtering;

TEST(VoxelGrid, IndexUsesFloorFromWorldOrigin) {
  const VoxelGridParams p{0.1, 0.1, 0.1};
  EXPECT_EQ(voxel_index({0.05, -0.05, 0.0}, p), (VoxelIndex{0, -1, 0}));
  EXPECT_EQ(voxel_index({-0.25, 0.35, 1.0}, p), (VoxelIndex{-3, 3, 10}));
}

TEST(VoxelGrid, TwoPointsOneCellGiveCentroid) {
  PointCloud c{{{0.01, 0.01, 0.01}, {0.02, 0.03, 0.0}, {0.5, 0.5, 0.5}}, Frame::imu_aligned};
  const auto out = voxel_grid_downsample(c, {0.1, 0.1, 0.1});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out.points[0].x, 0.015);
  EXPECT_DOUBLE_EQ(out.points[0].y, 0.02);
  EXPECT_EQ(out.points[1], (Point3{0.5, 0.5, 0.5}));
  EXPECT_EQ(out.frame, Frame::imu_aligned);
}

TEST(VoxelGrid, EmptyAndBadParams) {
  EXPECT_THROW(voxel_grid_downsample(PointCloud{}, {}), Error);
  PointCloud one{{{0, 0, 0}}};
  EXPECT_THROW(voxel_grid_downsample(one, {0.0, 0.1, 0.1}), Error);
}

TEST(VoxelGrid, MatchesBruteForceOnRandomClouds) {
  gs_test::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cloud = gs_test::random_cloud(rng, 200, 2.0);
    const VoxelGridParams params{rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.3)};
    EXPECT_EQ(voxel_grid_downsample(cloud, params).points, gs_test::voxel_oracle(cloud, params)) << "trial " << trial;
  }
}

TEST(VoxelGrid, OnePointPerOccupiedVoxel) {
  gs_test::Rng rng(5);
  const VoxelGridParams params{0.1, 0.2, 0.1};
  for (int trial = 0; trial < 100; ++trial) {
    const auto cloud = gs_test::random_cloud(rng, 200, 1.0);
    std::set<std::array<std::int64_t, 3>> occupied;
    for (const auto& p : cloud.points) {
      occupied.insert({static_cast<std::int64_t>(std::floor(p.x / 0.1)), static_cast<std::int64_t>(std::floor(p.y / 0.2)),
                       static_cast<std::int64_t>(std::floor(p.z / 0.1))});
    }
    const auto out = voxel_grid_downsample(cloud, params);
    EXPECT_EQ(out.size(), occupied.size());
  }
}

TEST(KdTree, RadiusCountMatchesLinearScan) {
  gs_test::Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cloud = gs_test::random_cloud(rng, 200, 1.0);
    const KdTree tree(cloud);
    for (int q = 0; q < 5; ++q) {
      const double r = rng.uniform(0.01, 0.4);
      // Half the queries sit on cloud points.
      const Point3 p = rng.index(2) == 0 ? cloud.points[rng.index(cloud.size())]
                                         : Point3{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
      const std::size_t all = gs_test::ball_count_oracle(cloud, p, r);
      EXPECT_EQ(tree.count_within(p, r), all);
      const bool member = std::find(cloud.points.begin(), cloud.points.end(), p) != cloud.points.end();
      EXPECT_EQ(tree.contains(p), member);
      EXPECT_EQ(tree.radius_count(p, r), member ? all - 1 : all);
      const auto idx = tree.radius_search(p, r);
      EXPECT_EQ(idx.size(), all);
      EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
    }
  }
}

TEST(KdTree, BoundaryIsClosed) {
  PointCloud c{{{0, 0, 0}, {0.5, 0, 0}, {0, 0.25, 0}}};
  const KdTree tree(c);
  EXPECT_EQ(tree.radius_count({0, 0, 0}, 0.5), 2u);
  EXPECT_EQ(tree.radius_count({0, 0, 0}, 0.25), 1u);
  EXPECT_EQ(tree.count_within({0, 0, 0}, 0.5, 2), 2u);
}

TEST(KdTree, DuplicatesCountAsNeighbors) {
  PointCloud c{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
  const KdTree tree(c);
  EXPECT_EQ(tree.radius_count({1, 1, 1}, 0.01), 2u);
  EXPECT_THROW(KdTree(PointCloud{}), Error);
}

TEST(RadiusFilter, MatchesBruteForce) {
  gs_test::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cloud = gs_test::random_cloud(rng, 200, 1.0);
    const double r = rng.uniform(0.02, 0.3);
    const auto k = static_cast<std::size_t>(1 + rng.index(6));
    const auto keep = gs_test::radius_keep_oracle(cloud, r, k);
    EXPECT_EQ(radius_inlier_flags(cloud, {r, k}), keep) << "trial " << trial;
    std::vector<Point3> want;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (keep[i]) want.push_back(cloud.points[i]);
    }
    EXPECT_EQ(radius_outlier_removal(cloud, {r, k}).points, want);
  }
}

TEST(RadiusFilter, IsolatedPointRemovedClusterKept) {
  PointCloud c;
  for (int i = 0; i < 6; ++i) c.points.push_back({0.01 * i, 0, 0});
  c.points.push_back({5, 5, 5});
  const auto out = radius_outlier_removal(c, {0.15, 5});
  EXPECT_EQ(out.size(), 6u);
  EXPECT_THROW(radius_outlier_removal(PointCloud{}, {}), Error);
  EXPECT_THROW(radius_outlier_removal(c, {0.0, 5}), Error);
}

TEST(RadiusFilter, IndependentOfThreadCount) {
  gs_test::Rng rng(8);
  const auto cloud = gs_test::random_cloud(rng, 2000, 1.0);
  const int saved = thread_count();
  set_thread_count(1);
  const auto a = radius_inlier_flags(cloud, {0.1, 3});
  set_thread_count(4);
  const auto b = radius_inlier_flags(cloud, {0.1, 3});
  set_thread_count(saved);
  EXPECT_EQ(a, b);
}
