#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "groundsight/plane/segmentation.hpp"

namespace groundsight::plane {

/// {"normal": [a, b, c], "d": d, "timings_ms": {...}, "converged": bool, ...}
nlohmann::json to_json(const SegmentationResult& result);

nlohmann::json plane_to_json(const PlaneModel& plane);
/// Accepts any object carrying "normal" and "d" (e.g. a segmentation sidecar).
PlaneModel plane_from_json(const nlohmann::json& j);
PlaneModel read_plane_json(const std::filesystem::path& path);

std::vector<std::uint8_t> label_bytes(const std::vector<PointLabel>& labels);

/// Labeled PLY of the aligned cloud (uchar label: 0 ground, 1 obstacle) plus
/// the JSON sidecar.
void write_segmentation(const std::filesystem::path& ply_path, const std::filesystem::path& json_path,
                        const SegmentationResult& result);

}  // namespace groundsight::plane
