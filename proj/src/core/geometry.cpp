#include "groundsight/core/geometry.hpp"

#include <algorithm>

namespace groundsight {

Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
  Rotation3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out.m[r * 3 + c] = a.m[r * 3 + 0] * b.m[0 * 3 + c] + a.m[r * 3 + 1] * b.m[1 * 3 + c] +
                         a.m[r * 3 + 2] * b.m[2 * 3 + c];
    }
  }
  return out;
}

Rotation3 rotation_about_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}

Rotation3 rotation_about_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

Rotation3 alignment_rotation(const ImuAttitude& att) {
  return rotation_about_z(att.roll()) * rotation_about_x(att.pitch());
}

PointCloud rotate_attitude(const PointCloud& cloud, const ImuAttitude& att) {
  if (cloud.frame != Frame::raw) {
    throw Error(ErrorKind::InvalidArgument, "rotate_attitude expects a raw cloud");
  }
  const Rotation3 rot = alignment_rotation(att);
  PointCloud out;
  out.frame = Frame::imu_aligned;
  out.points.resize(cloud.size());
  std::transform(cloud.points.begin(), cloud.points.end(), out.points.begin(),
                 [&rot](const Point3& p) { return rot.apply(p); });
  return out;
}

double normal_angle(const PlaneModel& a, const PlaneModel& b) {
  // atan2 of |cross| and dot stays accurate for tiny angles where acos does not.
  const Point3 c = cross(a.normal(), b.normal());
  return std::atan2(norm(c), dot(a.normal(), b.normal()));
}

}  // namespace groundsight
