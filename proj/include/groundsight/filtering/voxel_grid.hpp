#pragma once

#include <array>
#include <cstdint>

#include "groundsight/core/types.hpp"

namespace groundsight::filtering {

/// Cell edge lengths in meters. Defaults are the anisotropic 0.03 x 0.2 x 0.03
/// grid that keeps the vertical axis coarse, which thins walls and furniture
/// much more than the floor.
struct VoxelGridParams {
  double cell_x = 0.03;
  double cell_y = 0.2;
  double cell_z = 0.03;

  void validate() const;
};

using VoxelIndex = std::array<std::int64_t, 3>;

/// floor(coord / cell) on each axis, world origin as grid origin.
VoxelIndex voxel_index(const Point3& p, const VoxelGridParams& params);

/// One centroid per occupied voxel, emitted in order of each voxel's first
/// member in the input. The frame tag is preserved. Throws EmptyCloud.
PointCloud voxel_grid_downsample(const PointCloud& cloud, const VoxelGridParams& params);

}  // namespace groundsight::filtering
