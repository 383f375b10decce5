#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "groundsight/core/error.hpp"

namespace groundsight {

/// A point in meters. In the camera frame x points right, y up and z forward;
/// after attitude alignment y is the gravity-up axis.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double squared_norm(const Point3& p) { return dot(p, p); }
inline double norm(const Point3& p) { return std::sqrt(squared_norm(p)); }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

enum class Frame : std::uint8_t { raw, imu_aligned };

struct PointCloud {
  std::vector<Point3> points;
  Frame frame = Frame::raw;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Drops non-finite points; used by every ingestion path.
PointCloud sanitized(std::vector<Point3> points, Frame frame = Frame::raw);

/// Camera pitch (about x) and roll (about z) in radians, as reported by the IMU.
class ImuAttitude {
 public:
  ImuAttitude() = default;
  /// Throws AttitudeOutOfRange unless |pitch| and |roll| are below pi/2.
  ImuAttitude(double pitch, double roll);

  double pitch() const { return pitch_; }
  double roll() const { return roll_; }

 private:
  double pitch_ = 0.0;
  double roll_ = 0.0;
};

/// Ground plane n.p + d = 0 with a unit normal. The sign of (n, d) is fixed by
/// requiring n.y >= 0 (ties broken on x, then z).
class PlaneModel {
 public:
  PlaneModel() = default;

  /// Rescales (a, b, c, d) so the normal has unit length, then canonicalizes
  /// the sign. The zero set is unchanged. Throws DegenerateGeometry for a zero
  /// or non-finite normal.
  static PlaneModel from_coefficients(double a, double b, double c, double d);
  static PlaneModel from_point_normal(const Point3& point, const Point3& normal);

  const Point3& normal() const { return normal_; }
  double offset() const { return offset_; }

 private:
  PlaneModel(Point3 n, double d) : normal_(n), offset_(d) {}

  Point3 normal_{0.0, 1.0, 0.0};
  double offset_ = 0.0;
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  /// Throws InvalidArgument when the pinhole parameters are inconsistent.
  void validate() const;
};

/// Row-major interleaved image buffer.
template <typename T, int Channels>
class Image {
 public:
  static constexpr int channels = Channels;
  using value_type = T;

  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(checked(width)) * checked(height) * Channels, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  T& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  const T& at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  static int checked(int v) {
    if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative image dimension");
    return v;
  }
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * Channels + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using ImageRGB = Image<std::uint8_t, 3>;
using ImageGray8 = Image<std::uint8_t, 1>;
/// Depth in millimeters; 0 marks a missing return.
using ImageGray16 = Image<std::uint16_t, 1>;
/// Per-pixel {0, 1}.
using BinaryMask = Image<std::uint8_t, 1>;

}  // namespace groundsight
