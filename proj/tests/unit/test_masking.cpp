#include <gtest/gtest.h>

#include <cmath>

#include "groundsight/core/camera.hpp"
#include "groundsight/core/error.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/masking/ground_mask.hpp"
#include "test_support.hpp"

using namespace groundsight;
using namespace groundsight::masking;

namespace {

const CameraIntrinsics kIntr{150, 150, 79.5, 59.5, 160, 120};

// Depth image of a level floor 0.6 m below the camera, seen with attitude att.
// Pixels that miss the floor (or hit beyond 10 m) have no depth. A patch in
// the lower middle is pulled to 80 % of the floor range, i.e. a raised object.
struct Scene {
  ImageGray16 depth{160, 120};
  BinaryMask truth{160, 120};
};

Scene floor_scene(const ImuAttitude& att) {
  Scene s;
  const Rotation3 a = alignment_rotation(att);
  for (int v = 0; v < 120; ++v) {
    for (int u = 0; u < 160; ++u) {
      // Independent ray-plane intersection in the camera frame.
      const Point3 ray{(u - kIntr.cx) / kIntr.fx, -(v - kIntr.cy) / kIntr.fy, 1.0};
      const Point3 dir = a.apply(ray);
      if (dir.y >= -1e-6) continue;
      const double t = 0.6 / -dir.y;  // ray has unit z, so t is the depth
      if (t > 10.0) continue;
      const bool raised = u >= 70 && u < 90 && v >= 95 && v < 110;
      const double z = raised ? 0.8 * t : t;
      s.depth.at(u, v) = static_cast<std::uint16_t>(std::lround(z * 1000.0));
      s.truth.at(u, v) = raised ? 0 : 1;
    }
  }
  return s;
}

}  // namespace

TEST(DepthToPoints, BackProjectsMillimeters) {
  ImageGray16 d(160, 120);
  d.at(10, 20) = 1500;
  d.at(100, 90) = 250;
  const auto pts = depth_to_points(d, kIntr);
  ASSERT_EQ(pts.cloud.size(), 2u);
  EXPECT_EQ(pts.pixels[0].u, 10);
  EXPECT_EQ(pts.pixels[0].v, 20);
  EXPECT_DOUBLE_EQ(pts.cloud.points[0].z, 1.5);
  EXPECT_DOUBLE_EQ(pts.cloud.points[0].x, (10 - 79.5) * 1.5 / 150);
  EXPECT_DOUBLE_EQ(pts.cloud.points[1].y, (90 - 59.5) * 0.25 / 150);
  EXPECT_THROW(depth_to_points(ImageGray16(4, 4), kIntr), Error);
}

TEST(GroundMask, FloorKeptRaisedPatchRemoved) {
  gs_test::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ImuAttitude att(rng.uniform(0.1, 0.5), rng.uniform(-0.2, 0.2));
    const auto scene = floor_scene(att);
    const auto plane = PlaneModel::from_coefficients(0, 1, 0, 0.6);
    EXPECT_EQ(ground_pixel_mask(scene.depth, plane, kIntr, att), scene.truth) << trial;

    MaskingParams keep;
    keep.treat_missing_depth = MissingDepth::keep;
    const auto loose = ground_pixel_mask(scene.depth, plane, kIntr, att, keep);
    for (int v = 0; v < 120; ++v) {
      for (int u = 0; u < 160; ++u) {
        const bool missing = scene.depth.at(u, v) == 0;
        ASSERT_EQ(loose.at(u, v), missing ? 1 : scene.truth.at(u, v));
      }
    }
  }
}

TEST(GroundMask, RgbPixelsKeptOrBlackened) {
  const ImuAttitude att(0.3, 0.0);
  const auto scene = floor_scene(att);
  ImageRGB rgb(160, 120);
  gs_test::Rng rng(1);
  for (auto& b : rgb.data()) b = static_cast<std::uint8_t>(1 + rng.index(255));
  const auto plane = PlaneModel::from_coefficients(0, 1, 0, 0.6);
  const auto out = mask_ground(rgb, scene.depth, plane, kIntr, att);
  for (int v = 0; v < 120; ++v) {
    for (int u = 0; u < 160; ++u) {
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(out.at(u, v, c), scene.truth.at(u, v) ? rgb.at(u, v, c) : 0);
      }
    }
  }
  EXPECT_THROW(mask_ground(ImageRGB(10, 10), scene.depth, plane, kIntr, att), Error);
  MaskingParams bad;
  bad.ground_threshold = 0.0;
  EXPECT_THROW(ground_pixel_mask(scene.depth, plane, kIntr, att, bad), Error);
}
