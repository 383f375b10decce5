#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "groundsight/core/types.hpp"
#include "groundsight/plane/segmentation.hpp"

namespace groundsight::mapping {

/// Cell (i, j) covers x in [origin_x + i*res, origin_x + (i+1)*res) and
/// z in [origin_z + j*res, origin_z + (j+1)*res) of the aligned frame.
struct GridConfig {
  double resolution = 0.05;
  double origin_x = -5.0;
  double origin_z = 0.0;
  int width_cells = 200;
  int height_cells = 200;

  void validate() const;
};

struct CellIndex {
  int i = 0;  // along x
  int j = 0;  // along z
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Cell containing (x, z); nullopt outside the grid.
std::optional<CellIndex> cell_of(const GridConfig& cfg, double x, double z);

enum class Occupancy : std::uint8_t { unknown, free, occupied };
enum class Traversability : std::uint8_t { unknown, drivable, anomaly };

template <typename Cell>
struct Grid {
  GridConfig config;
  std::vector<Cell> cells;  // row-major, row = j

  Grid() = default;
  explicit Grid(const GridConfig& cfg)
      : config(cfg), cells(static_cast<std::size_t>(cfg.width_cells) * cfg.height_cells, Cell::unknown) {}

  Cell& at(CellIndex c) { return cells[static_cast<std::size_t>(c.j) * config.width_cells + c.i]; }
  Cell at(CellIndex c) const { return cells[static_cast<std::size_t>(c.j) * config.width_cells + c.i]; }
  std::size_t count(Cell v) const {
    std::size_t n = 0;
    for (Cell c : cells) n += c == v;
    return n;
  }
  friend bool operator==(const Grid& a, const Grid& b) { return a.cells == b.cells; }
};

using OccupancyGrid = Grid<Occupancy>;
using TraversabilityGrid = Grid<Traversability>;

/// Obstacle points mark their cell occupied, ground points mark it free unless
/// occupied (obstacle wins). Points outside the grid are ignored.
OccupancyGrid project_occupancy(const std::vector<plane::PointLabel>& labels, const PointCloud& cloud_aligned,
                                const GridConfig& cfg);
inline OccupancyGrid project_occupancy(const plane::SegmentationResult& result, const GridConfig& cfg) {
  return project_occupancy(result.labels, result.aligned, cfg);
}

/// Casts the ray of every pixel, rotates it into the aligned frame and
/// intersects it with the ground plane. Hits in front of the camera mark their
/// cell drivable (mask 1) or anomaly (mask 0); anomaly wins conflicts. Rays with
/// |dir . n| < 1e-9 or a non-positive range are skipped. Throws DimensionMismatch.
TraversabilityGrid traversability_from_mask(const BinaryMask& mask, const PlaneModel& plane,
                                            const CameraIntrinsics& intr, const ImuAttitude& att,
                                            const GridConfig& cfg);

/// Ground point hit by the ray through pixel (u, v), in the aligned frame.
std::optional<Point3> ground_hit(double u, double v, const PlaneModel& plane, const CameraIntrinsics& intr,
                                 const ImuAttitude& att);

/// PGM encodings: free/drivable 255, occupied/anomaly 0, unknown 127.
ImageGray8 to_image(const OccupancyGrid& grid);
ImageGray8 to_image(const TraversabilityGrid& grid);

nlohmann::json to_json(const GridConfig& cfg);
GridConfig grid_config_from_json(const nlohmann::json& j);

/// Writes `<pgm_path>` and a JSON sidecar holding the grid config and cell counts.
void write_grid(const std::filesystem::path& pgm_path, const std::filesystem::path& json_path,
                const OccupancyGrid& grid);
void write_grid(const std::filesystem::path& pgm_path, const std::filesystem::path& json_path,
                const TraversabilityGrid& grid);

}  // namespace groundsight::mapping
