#include "groundsight/core/types.hpp"

#include <numbers>
#include <string>

namespace groundsight {

PointCloud sanitized(std::vector<Point3> points, Frame frame) {
  std::erase_if(points, [](const Point3& p) { return !p.finite(); });
  return PointCloud{std::move(points), frame};
}

// The double nearest pi/2 lies below the true value, so accepting equality with
// it still enforces the strict open interval for every representable angle.
ImuAttitude::ImuAttitude(double pitch, double roll) : pitch_(pitch), roll_(roll) {
  constexpr double limit = std::numbers::pi / 2.0;
  if (!std::isfinite(pitch) || !std::isfinite(roll) || std::abs(pitch) > limit ||
      std::abs(roll) > limit) {
    throw Error(ErrorKind::AttitudeOutOfRange,
                "pitch/roll must lie in (-pi/2, pi/2), got pitch=" + std::to_string(pitch) +
                    " roll=" + std::to_string(roll));
  }
}

PlaneModel PlaneModel::from_coefficients(double a, double b, double c, double d) {
  const double len = std::sqrt(a * a + b * b + c * c);
  if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(d)) {
    throw Error(ErrorKind::DegenerateGeometry, "plane normal must be finite and non-zero");
  }
  Point3 n{a / len, b / len, c / len};
  double off = d / len;
  const bool flip = n.y < 0.0 || (n.y == 0.0 && (n.x < 0.0 || (n.x == 0.0 && n.z < 0.0)));
  if (flip) {
    n = -1.0 * n;
    off = -off;
  }
  return PlaneModel(n, off);
}

PlaneModel PlaneModel::from_point_normal(const Point3& point, const Point3& normal) {
  const double len = norm(normal);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(ErrorKind::DegenerateGeometry, "plane normal must be finite and non-zero");
  }
  const Point3 n = (1.0 / len) * normal;
  return from_coefficients(n.x, n.y, n.z, -dot(n, point));
}

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "focal lengths must be positive");
  }
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidArgument, "image size must be positive");
  }
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    throw Error(ErrorKind::InvalidArgument, "principal point must lie inside the image");
  }
}

}  // namespace groundsight
