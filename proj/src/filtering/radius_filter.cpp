#include "groundsight/filtering/radius_filter.hpp"

#include "groundsight/filtering/kdtree.hpp"

namespace groundsight::filtering {

void RadiusFilterParams::validate() const {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (min_neighbors < 1) throw Error(ErrorKind::InvalidArgument, "min_neighbors must be >= 1");
}

std::vector<bool> radius_inlier_flags(const PointCloud& cloud, const RadiusFilterParams& params) {
  params.validate();
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "radius_outlier_removal on an empty cloud");
  const KdTree tree(cloud);
  // Self is always inside its own ball, so k neighbors means k + 1 hits.
  const std::size_t needed = params.min_neighbors + 1;
  const auto counts = tree.member_counts(params.radius, needed);
  std::vector<bool> keep(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) keep[i] = counts[i] >= needed;
  return keep;
}

PointCloud radius_outlier_removal(const PointCloud& cloud, const RadiusFilterParams& params) {
  const std::vector<bool> keep = radius_inlier_flags(cloud, params);
  PointCloud out;
  out.frame = cloud.frame;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (keep[i]) out.points.push_back(cloud.points[i]);
  }
  return out;
}

}  // namespace groundsight::filtering
