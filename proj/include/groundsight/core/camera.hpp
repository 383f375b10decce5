#pragma once

#include <optional>

#include "groundsight/core/types.hpp"

namespace groundsight {

// Two frames meet here. Pinhole back-projection yields optical coordinates
// (x right, y down, z forward); the rest of the pipeline works in the camera
// frame (x right, y up, z forward). The two differ by the sign of y.

inline Point3 optical_to_camera(const Point3& p) { return {p.x, -p.y, p.z}; }
inline Point3 camera_to_optical(const Point3& p) { return {p.x, -p.y, p.z}; }

/// Optical-frame point for pixel (u, v) at depth z meters:
/// X = (u - cx) z / fx, Y = (v - cy) z / fy, Z = z.
inline Point3 back_project(double u, double v, double z, const CameraIntrinsics& intr) {
  return {(u - intr.cx) * z / intr.fx, (v - intr.cy) * z / intr.fy, z};
}

/// Camera-frame direction (z component 1) of the ray through pixel (u, v).
inline Point3 pixel_ray(double u, double v, const CameraIntrinsics& intr) {
  return optical_to_camera(back_project(u, v, 1.0, intr));
}

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Projects a camera-frame point; nullopt for points at or behind the camera.
std::optional<PixelCoord> project_to_pixel(const Point3& camera_point, const CameraIntrinsics& intr);

}  // namespace groundsight
