#include "groundsight/plane/result_io.hpp"

#include "groundsight/core/io.hpp"

namespace groundsight::plane {

nlohmann::json plane_to_json(const PlaneModel& plane) {
  const Point3& n = plane.normal();
  return {{"normal", {n.x, n.y, n.z}}, {"d", plane.offset()}};
}

nlohmann::json to_json(const SegmentationResult& result) {
  nlohmann::json j = plane_to_json(result.plane);
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& t : result.timings) timings[t.stage] = t.ms;
  j["timings_ms"] = timings;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["candidate_count"] = result.candidate_count;
  j["seed_count"] = result.seed_count;
  std::size_t ground = 0;
  for (auto l : result.labels) ground += l == PointLabel::ground;
  j["ground_points"] = ground;
  j["obstacle_points"] = result.labels.size() - ground;
  return j;
}

PlaneModel plane_from_json(const nlohmann::json& j) {
  try {
    const auto& n = j.at("normal");
    if (!n.is_array() || n.size() != 3) throw Error(ErrorKind::Config, "plane 'normal' must have 3 entries");
    return PlaneModel::from_coefficients(n[0].get<double>(), n[1].get<double>(), n[2].get<double>(),
                                         j.at("d").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad plane JSON: ") + e.what());
  }
}

PlaneModel read_plane_json(const std::filesystem::path& path) {
  const std::string text = io::read_text(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
  return plane_from_json(j);
}

std::vector<std::uint8_t> label_bytes(const std::vector<PointLabel>& labels) {
  std::vector<std::uint8_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = static_cast<std::uint8_t>(labels[i]);
  return out;
}

void write_segmentation(const std::filesystem::path& ply_path, const std::filesystem::path& json_path,
                        const SegmentationResult& result) {
  const auto bytes = label_bytes(result.labels);
  io::write_ply(ply_path, result.aligned, bytes);
  io::write_text(json_path, to_json(result).dump(2) + "\n");
}

}  // namespace groundsight::plane
