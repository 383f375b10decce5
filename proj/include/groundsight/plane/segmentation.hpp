#pragma once

#include <string>
#include <utility>
#include <vector>

#include "groundsight/core/types.hpp"
#include "groundsight/filtering/radius_filter.hpp"
#include "groundsight/filtering/voxel_grid.hpp"
#include "groundsight/plane/plane_fit.hpp"

namespace groundsight::plane {

struct SegmentationConfig {
  filtering::VoxelGridParams voxel;
  filtering::RadiusFilterParams radius;
  RansacParams ransac;
  /// Points farther than this from the plane are obstacles; 5 cm is the
  /// smallest floor object height the geometric stage is expected to catch.
  double classify_threshold = 0.05;

  void validate() const;
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct SegmentationResult {
  PlaneModel plane;
  /// Aligned with the input cloud.
  std::vector<PointLabel> labels;
  /// align, voxel, radius, seed, ransac, classify, total.
  std::vector<StageTiming> timings;
  bool converged = false;
  int iterations = 0;
  std::size_t candidate_count = 0;
  std::size_t seed_count = 0;
  /// The attitude-aligned, full-resolution cloud the labels refer to.
  PointCloud aligned;

  double timing(const std::string& stage) const;
};

/// Align -> voxel downsample -> radius outlier removal -> seed -> RANSAC/PCA
/// refinement -> classification of the aligned full-resolution cloud.
/// Throws EmptyCloud, AllPointsFiltered or DegenerateGeometry.
SegmentationResult segment_ground(const PointCloud& raw, const ImuAttitude& att,
                                  const SegmentationConfig& config = {});

}  // namespace groundsight::plane
