#include "groundsight/masking/ground_mask.hpp"

#include <cmath>

#include "groundsight/core/camera.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/core/parallel.hpp"

namespace groundsight::masking {
namespace {

void require_size(int w, int h, const CameraIntrinsics& intr, const char* what) {
  if (w != intr.width || h != intr.height) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " size differs from the camera intrinsics");
  }
}

}  // namespace

void MaskingParams::validate() const {
  if (!(ground_threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "ground_threshold must be positive");
}

DepthPoints depth_to_points(const ImageGray16& depth, const CameraIntrinsics& intr) {
  intr.validate();
  require_size(depth.width(), depth.height(), intr, "depth image");
  DepthPoints out;
  out.cloud.frame = Frame::raw;
  for (int v = 0; v < depth.height(); ++v) {
    for (int u = 0; u < depth.width(); ++u) {
      const std::uint16_t mm = depth.at(u, v);
      if (mm == 0) continue;
      out.cloud.points.push_back(back_project(u, v, mm / 1000.0, intr));
      out.pixels.push_back({u, v});
    }
  }
  return out;
}

BinaryMask ground_pixel_mask(const ImageGray16& depth, const PlaneModel& plane, const CameraIntrinsics& intr,
                             const ImuAttitude& att, const MaskingParams& params) {
  params.validate();
  intr.validate();
  require_size(depth.width(), depth.height(), intr, "depth image");
  const Rotation3 rot = alignment_rotation(att);
  const std::uint8_t missing = params.treat_missing_depth == MissingDepth::keep ? 1 : 0;
  BinaryMask keep(depth.width(), depth.height());
  parallel_for(static_cast<std::size_t>(depth.height()), [&](std::size_t v0, std::size_t v1) {
    for (int v = static_cast<int>(v0); v < static_cast<int>(v1); ++v) {
      for (int u = 0; u < depth.width(); ++u) {
        const std::uint16_t mm = depth.at(u, v);
        if (mm == 0) {
          keep.at(u, v) = missing;
          continue;
        }
        const Point3 p = rot.apply(optical_to_camera(back_project(u, v, mm / 1000.0, intr)));
        keep.at(u, v) = std::abs(signed_distance(plane, p)) <= params.ground_threshold;
      }
    }
  });
  return keep;
}

ImageRGB mask_ground(const ImageRGB& rgb, const ImageGray16& depth, const PlaneModel& plane,
                     const CameraIntrinsics& intr, const ImuAttitude& att, const MaskingParams& params) {
  intr.validate();
  require_size(rgb.width(), rgb.height(), intr, "RGB image");
  const BinaryMask keep = ground_pixel_mask(depth, plane, intr, att, params);
  ImageRGB out = rgb;
  for (int v = 0; v < rgb.height(); ++v) {
    for (int u = 0; u < rgb.width(); ++u) {
      if (keep.at(u, v)) continue;
      for (int c = 0; c < 3; ++c) out.at(u, v, c) = 0;
    }
  }
  return out;
}

}  // namespace groundsight::masking
