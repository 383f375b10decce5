#pragma once

#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::masking {

enum class MissingDepth { blacken, keep };

struct MaskingParams {
  double ground_threshold = 0.05;  // m, same as the classification threshold
  MissingDepth treat_missing_depth = MissingDepth::blacken;

  void validate() const;
};

struct PixelRef {
  int u = 0;
  int v = 0;
};

/// Back-projected points in the optical frame (y down), with the pixel each
/// came from. Zero-depth pixels are skipped.
struct DepthPoints {
  PointCloud cloud;
  std::vector<PixelRef> pixels;
};

/// Pinhole back-projection of a millimeter depth image. Throws DimensionMismatch.
DepthPoints depth_to_points(const ImageGray16& depth, const CameraIntrinsics& intr);

/// Keeps an RGB pixel iff its depth point, moved to the camera frame and
/// attitude-aligned, lies within ground_threshold of the plane; every other
/// pixel becomes black. RGB and depth are assumed registered.
ImageRGB mask_ground(const ImageRGB& rgb, const ImageGray16& depth, const PlaneModel& plane,
                     const CameraIntrinsics& intr, const ImuAttitude& att, const MaskingParams& params = {});

/// Per-pixel keep flags behind mask_ground (1 = ground pixel kept).
BinaryMask ground_pixel_mask(const ImageGray16& depth, const PlaneModel& plane, const CameraIntrinsics& intr,
                             const ImuAttitude& att, const MaskingParams& params = {});

}  // namespace groundsight::masking
