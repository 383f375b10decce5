#include "groundsight/mapping/grid.hpp"

#include <cmath>

#include "groundsight/core/camera.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/core/io.hpp"

namespace groundsight::mapping {

void GridConfig::validate() const {
  if (!(resolution > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
  if (width_cells < 1 || height_cells < 1) throw Error(ErrorKind::InvalidArgument, "grid dimensions must be >= 1");
  if (!std::isfinite(origin_x) || !std::isfinite(origin_z)) {
    throw Error(ErrorKind::InvalidArgument, "grid origin must be finite");
  }
}

std::optional<CellIndex> cell_of(const GridConfig& cfg, double x, double z) {
  const double fi = std::floor((x - cfg.origin_x) / cfg.resolution);
  const double fj = std::floor((z - cfg.origin_z) / cfg.resolution);
  if (!(fi >= 0.0 && fi < cfg.width_cells && fj >= 0.0 && fj < cfg.height_cells)) return std::nullopt;
  return CellIndex{static_cast<int>(fi), static_cast<int>(fj)};
}

OccupancyGrid project_occupancy(const std::vector<plane::PointLabel>& labels, const PointCloud& cloud_aligned,
                                const GridConfig& cfg) {
  cfg.validate();
  if (labels.size() != cloud_aligned.size()) {
    throw Error(ErrorKind::LengthMismatch, "labels are not aligned with the cloud");
  }
  OccupancyGrid grid(cfg);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const Point3& p = cloud_aligned.points[k];
    const auto cell = cell_of(cfg, p.x, p.z);
    if (!cell) continue;
    Occupancy& c = grid.at(*cell);
    if (labels[k] == plane::PointLabel::obstacle) {
      c = Occupancy::occupied;
    } else if (c != Occupancy::occupied) {
      c = Occupancy::free;
    }
  }
  return grid;
}

namespace {

std::optional<Point3> intersect(const Rotation3& rot, double u, double v, const PlaneModel& plane,
                                const CameraIntrinsics& intr) {
  const Point3 dir = rot.apply(pixel_ray(u, v, intr));
  const double denom = dot(dir, plane.normal());
  if (std::abs(denom) < 1e-9) return std::nullopt;
  // Camera centre is the origin of the aligned frame.
  const double t = -plane.offset() / denom;
  if (!(t > 0.0)) return std::nullopt;
  return t * dir;
}

}  // namespace

std::optional<Point3> ground_hit(double u, double v, const PlaneModel& plane, const CameraIntrinsics& intr,
                                 const ImuAttitude& att) {
  return intersect(alignment_rotation(att), u, v, plane, intr);
}

TraversabilityGrid traversability_from_mask(const BinaryMask& mask, const PlaneModel& plane,
                                            const CameraIntrinsics& intr, const ImuAttitude& att,
                                            const GridConfig& cfg) {
  cfg.validate();
  intr.validate();
  if (mask.width() != intr.width || mask.height() != intr.height) {
    throw Error(ErrorKind::DimensionMismatch, "mask size differs from the camera intrinsics");
  }
  const Rotation3 rot = alignment_rotation(att);
  TraversabilityGrid grid(cfg);
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      const auto hit = intersect(rot, u, v, plane, intr);
      if (!hit) continue;
      const auto cell = cell_of(cfg, hit->x, hit->z);
      if (!cell) continue;
      Traversability& c = grid.at(*cell);
      if (mask.at(u, v) == 0) {
        c = Traversability::anomaly;
      } else if (c != Traversability::anomaly) {
        c = Traversability::drivable;
      }
    }
  }
  return grid;
}

namespace {

template <typename Grid, typename Encode>
ImageGray8 render(const Grid& grid, Encode encode) {
  ImageGray8 img(grid.config.width_cells, grid.config.height_cells);
  for (int j = 0; j < grid.config.height_cells; ++j) {
    for (int i = 0; i < grid.config.width_cells; ++i) img.at(i, j) = encode(grid.at({i, j}));
  }
  return img;
}

}  // namespace

ImageGray8 to_image(const OccupancyGrid& grid) {
  return render(grid, [](Occupancy c) -> std::uint8_t {
    switch (c) {
      case Occupancy::free: return 255;
      case Occupancy::occupied: return 0;
      case Occupancy::unknown: break;
    }
    return 127;
  });
}

ImageGray8 to_image(const TraversabilityGrid& grid) {
  return render(grid, [](Traversability c) -> std::uint8_t {
    switch (c) {
      case Traversability::drivable: return 255;
      case Traversability::anomaly: return 0;
      case Traversability::unknown: break;
    }
    return 127;
  });
}

nlohmann::json to_json(const GridConfig& cfg) {
  return {{"resolution", cfg.resolution},   {"origin_x", cfg.origin_x},
          {"origin_z", cfg.origin_z},       {"width_cells", cfg.width_cells},
          {"height_cells", cfg.height_cells}};
}

GridConfig grid_config_from_json(const nlohmann::json& j) {
  GridConfig cfg;
  try {
    cfg.resolution = j.at("resolution").get<double>();
    cfg.origin_x = j.at("origin_x").get<double>();
    cfg.origin_z = j.at("origin_z").get<double>();
    cfg.width_cells = j.at("width_cells").get<int>();
    cfg.height_cells = j.at("height_cells").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad grid JSON: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void write_grid(const std::filesystem::path& pgm_path, const std::filesystem::path& json_path,
                const OccupancyGrid& grid) {
  io::write_pgm(pgm_path, to_image(grid));
  nlohmann::json j{{"kind", "occupancy"},
                   {"grid", to_json(grid.config)},
                   {"encoding", {{"free", 255}, {"occupied", 0}, {"unknown", 127}}},
                   {"counts",
                    {{"free", grid.count(Occupancy::free)},
                     {"occupied", grid.count(Occupancy::occupied)},
                     {"unknown", grid.count(Occupancy::unknown)}}}};
  io::write_text(json_path, j.dump(2) + "\n");
}

void write_grid(const std::filesystem::path& pgm_path, const std::filesystem::path& json_path,
                const TraversabilityGrid& grid) {
  io::write_pgm(pgm_path, to_image(grid));
  nlohmann::json j{{"kind", "traversability"},
                   {"grid", to_json(grid.config)},
                   {"encoding", {{"drivable", 255}, {"anomaly", 0}, {"unknown", 127}}},
                   {"counts",
                    {{"drivable", grid.count(Traversability::drivable)},
                     {"anomaly", grid.count(Traversability::anomaly)},
                     {"unknown", grid.count(Traversability::unknown)}}}};
  io::write_text(json_path, j.dump(2) + "\n");
}

}  // namespace groundsight::mapping
