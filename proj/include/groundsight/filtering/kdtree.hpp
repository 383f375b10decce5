#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::filtering {

/// Balanced 3-D tree over a fixed point set, split on the axis of largest
/// extent at the median. Immutable after construction; concurrent queries are
/// safe.
///
/// All radius predicates use the closed ball dx^2 + dy^2 + dz^2 <= r^2.
class KdTree {
 public:
  /// Throws EmptyCloud.
  explicit KdTree(const PointCloud& cloud);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point3>& points() const { return points_; }

  /// Points within r of p, stopping early once `stop_at` have been found.
  std::size_t count_within(const Point3& p, double r,
                           std::size_t stop_at = std::numeric_limits<std::size_t>::max()) const;

  /// count_within(points()[i], r, stop_at) for every i, evaluated in tree
  /// order for locality. Chunks run through parallel_for.
  std::vector<std::size_t> member_counts(double r, std::size_t stop_at = std::numeric_limits<std::size_t>::max()) const;

  /// Neighbors of p within r. When p coincides with a tree point it is treated
  /// as that member and one instance is excluded (duplicates still count).
  std::size_t radius_count(const Point3& p, double r) const;

  /// Indices (into points()) of every point within r of p, ascending.
  std::vector<std::size_t> radius_search(const Point3& p, double r) const;

  bool contains(const Point3& p) const;

 private:
  static constexpr std::size_t kLeafSize = 32;

  void build(std::size_t lo, std::size_t hi);

  template <typename Visit>
  void visit_ball(const Point3& p, double r2, Visit&& visit) const;

  struct Entry {
    Point3 p;
    std::uint32_t index;  // into points_
  };

  std::vector<Point3> points_;
  std::vector<Entry> nodes_;        // points in tree layout, for contiguous leaf scans
  std::vector<std::uint8_t> axis_;  // split axis stored at each node's median slot
};

}  // namespace groundsight::filtering
