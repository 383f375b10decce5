#pragma once

#include <array>

#include "groundsight/core/types.hpp"

namespace groundsight {

inline double signed_distance(const PlaneModel& plane, const Point3& p) {
  const Point3& n = plane.normal();
  return n.x * p.x + n.y * p.y + n.z * p.z + plane.offset();
}

/// Row-major 3x3 rotation.
struct Rotation3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Point3 apply(const Point3& p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z,
            m[3] * p.x + m[4] * p.y + m[5] * p.z,
            m[6] * p.x + m[7] * p.y + m[8] * p.z};
  }
  Point3 apply_transposed(const Point3& p) const {
    return {m[0] * p.x + m[3] * p.y + m[6] * p.z,
            m[1] * p.x + m[4] * p.y + m[7] * p.z,
            m[2] * p.x + m[5] * p.y + m[8] * p.z};
  }
  Rotation3 transposed() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }
  friend Rotation3 operator*(const Rotation3& a, const Rotation3& b);
};

Rotation3 rotation_about_x(double angle);
Rotation3 rotation_about_z(double angle);

/// Camera-to-gravity alignment: A = Rz(roll) * Rx(pitch), with the usual
/// right-handed elementary rotations. Written in the camera's own convention
/// this is R_roll(-roll) * R_pitch(-pitch): pitch is undone first (about x),
/// then roll (about z). A maps the measured gravity direction onto -y.
Rotation3 alignment_rotation(const ImuAttitude& att);

/// Requires cloud.frame == raw; returns the imu_aligned cloud.
PointCloud rotate_attitude(const PointCloud& cloud, const ImuAttitude& att);

/// Angle in radians between two plane normals, in [0, pi].
double normal_angle(const PlaneModel& a, const PlaneModel& b);

}  // namespace groundsight
