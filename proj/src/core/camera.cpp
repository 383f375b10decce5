#include "groundsight/core/camera.hpp"

namespace groundsight {

std::optional<PixelCoord> project_to_pixel(const Point3& camera_point, const CameraIntrinsics& intr) {
  const Point3 o = camera_to_optical(camera_point);
  if (!(o.z > 0.0)) return std::nullopt;
  return PixelCoord{intr.fx * o.x / o.z + intr.cx, intr.fy * o.y / o.z + intr.cy};
}

}  // namespace groundsight
