#pragma once

#include <cstddef>
#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::filtering {

/// Engineering defaults; neither value comes from a measured setup.
struct RadiusFilterParams {
  double radius = 0.15;
  std::size_t min_neighbors = 5;

  void validate() const;
};

/// Keeps points with at least min_neighbors other points inside the closed
/// radius ball (the point itself is not counted, coincident duplicates are).
/// Survivor order follows the input. Throws EmptyCloud.
PointCloud radius_outlier_removal(const PointCloud& cloud, const RadiusFilterParams& params);

/// Same predicate, returned as a keep-flag per input point.
std::vector<bool> radius_inlier_flags(const PointCloud& cloud, const RadiusFilterParams& params);

}  // namespace groundsight::filtering
