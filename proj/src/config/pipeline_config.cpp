#include "groundsight/config/pipeline_config.hpp"

#include <cmath>
#include <numbers>

#include "groundsight/core/error.hpp"
#include "groundsight/core/io.hpp"

namespace groundsight::config {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

constexpr double kDeg = std::numbers::pi / 180.0;

json box_json(const synth::Box& b) {
  return {{"center_x", b.center_x}, {"center_z", b.center_z}, {"size_x", b.size_x}, {"size_z", b.size_z},
          {"height", b.height}};
}

const json& box_template() {
  static const json t = box_json(synth::Box{});
  return t;
}

const json& attitude_template() {
  static const json t{{"pitch_deg", 0.0}, {"roll_deg", 0.0}};
  return t;
}

bool compatible(const json& want, const json& have) {
  if (want.is_number_unsigned()) return have.is_number_unsigned() || (have.is_number_integer() && have.get<std::int64_t>() >= 0);
  if (want.is_number_integer()) return have.is_number_integer();
  if (want.is_number_float()) return have.is_number();
  return want.type() == have.type();
}

// Every key of `have` must exist in `want` with a compatible type.
void check_known(const json& want, const json& have, const std::string& path) {
  if (!have.is_object()) fail(path.empty() ? "config must be a JSON object" : path + " must be an object");
  for (const auto& [key, value] : have.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!want.contains(key)) fail("unknown key " + where);
    const json& w = want.at(key);
    if (where == "synth.attitude") {
      if (!value.is_null()) check_known(attitude_template(), value, where);
      if (value.is_object() && value.size() != 2) fail(where + " needs pitch_deg and roll_deg");
    } else if (where == "synth.boxes") {
      if (!value.is_array()) fail(where + " must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        check_known(box_template(), value[i], where + "[" + std::to_string(i) + "]");
      }
    } else if (w.is_object()) {
      check_known(w, value, where);
    } else if (w.is_array()) {
      if (!value.is_array()) fail(where + " must be an array");
      for (const auto& e : value) {
        if (!e.is_number_integer()) fail(where + " must hold integers");
      }
    } else if (!compatible(w, value)) {
      fail(where + " has the wrong type");
    }
  }
}

// Objects merge key by key, everything else is replaced.
void merge(json& base, const json& patch) {
  for (const auto& [key, value] : patch.items()) {
    if (value.is_object() && base.contains(key) && base[key].is_object()) {
      merge(base[key], value);
    } else {
      base[key] = value;
    }
  }
}

template <typename Fn>
void section(const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(std::string(name) + ": " + e.what());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  section("segmentation", [&] { segmentation.validate(); });
  section("masking", [&] { masking.validate(); });
  section("grid", [&] { grid.validate(); });
  section("camera", [&] { camera.validate(); });
  section("loss", [&] { loss.validate(); });
  section("mosts", [&] { mosts.validate(); });
  section("perlin", [&] { perlin.validate(); });
  section("synth", [&] { synth.validate(); });
  if (bench.count < 1) fail("bench: count must be >= 1");
}

json to_json(const PipelineConfig& c) {
  const auto& s = c.segmentation;
  const auto& sp = c.synth;
  json boxes = json::array();
  for (const auto& b : sp.boxes) boxes.push_back(box_json(b));
  json attitude = nullptr;
  if (sp.attitude) attitude = {{"pitch_deg", sp.attitude->pitch() / kDeg}, {"roll_deg", sp.attitude->roll() / kDeg}};

  return {
      {"voxel", {{"cell_x", s.voxel.cell_x}, {"cell_y", s.voxel.cell_y}, {"cell_z", s.voxel.cell_z}}},
      {"radius", {{"radius", s.radius.radius}, {"min_neighbors", s.radius.min_neighbors}}},
      {"ransac",
       {{"seed_fraction", s.ransac.seed_fraction},
        {"inlier_threshold", s.ransac.inlier_threshold},
        {"max_iterations", s.ransac.max_iterations},
        {"convergence_eps_d", s.ransac.convergence_eps_d},
        {"convergence_eps_angle_deg", s.ransac.convergence_eps_angle / kDeg}}},
      {"segmentation", {{"classify_threshold", s.classify_threshold}}},
      {"masking",
       {{"ground_threshold", c.masking.ground_threshold},
        {"treat_missing_depth", c.masking.treat_missing_depth == masking::MissingDepth::blacken ? "blacken" : "keep"}}},
      {"grid",
       {{"resolution", c.grid.resolution},
        {"origin_x", c.grid.origin_x},
        {"origin_z", c.grid.origin_z},
        {"width_cells", c.grid.width_cells},
        {"height_cells", c.grid.height_cells}}},
      {"camera",
       {{"fx", c.camera.fx},
        {"fy", c.camera.fy},
        {"cx", c.camera.cx},
        {"cy", c.camera.cy},
        {"width", c.camera.width},
        {"height", c.camera.height}}},
      {"loss",
       {{"alpha", c.loss.alpha}, {"beta", c.loss.beta}, {"smooth", c.loss.smooth}, {"clamp_eps", c.loss.clamp_eps}}},
      {"mosts",
       {{"encoder_channels", c.mosts.encoder_channels},
        {"embedding_channels", c.mosts.embedding_channels},
        {"decoder_blocks", c.mosts.decoder_blocks},
        {"groups", c.mosts.groups},
        {"attention_reduction", c.mosts.attention_reduction},
        {"seed", c.mosts.seed},
        {"monotone_head", c.mosts.monotone_head}}},
      {"perlin",
       {{"grid_size", c.perlin.grid_size},
        {"octaves", c.perlin.octaves},
        {"persistence", c.perlin.persistence},
        {"lacunarity", c.perlin.lacunarity}}},
      {"synth",
       {{"floor_min_x", sp.floor_min_x},
        {"floor_max_x", sp.floor_max_x},
        {"floor_min_z", sp.floor_min_z},
        {"floor_max_z", sp.floor_max_z},
        {"camera_height", sp.camera_height},
        {"walls", sp.walls},
        {"wall_height", sp.wall_height},
        {"boxes", boxes},
        {"box_count", sp.box_count},
        {"box_min_height", sp.box_min_height},
        {"box_max_height", sp.box_max_height},
        {"box_min_size", sp.box_min_size},
        {"box_max_size", sp.box_max_size},
        {"density", sp.density},
        {"max_points", sp.max_points},
        {"noise_sigma", sp.noise_sigma},
        {"outlier_fraction", sp.outlier_fraction},
        {"attitude", attitude},
        {"max_tilt_deg", sp.max_tilt_deg},
        {"seed", sp.seed}}},
      {"bench", {{"seed", c.bench.seed}, {"count", c.bench.count}}},
  };
}

PipelineConfig from_json(const json& j) {
  const json defaults = to_json(PipelineConfig{});
  check_known(defaults, j, "");
  json m = defaults;
  merge(m, j);

  PipelineConfig c;
  try {
    auto& s = c.segmentation;
    const json& v = m["voxel"];
    s.voxel = {v["cell_x"].get<double>(), v["cell_y"].get<double>(), v["cell_z"].get<double>()};
    s.radius.radius = m["radius"]["radius"].get<double>();
    s.radius.min_neighbors = m["radius"]["min_neighbors"].get<std::size_t>();
    const json& r = m["ransac"];
    s.ransac.seed_fraction = r["seed_fraction"].get<double>();
    s.ransac.inlier_threshold = r["inlier_threshold"].get<double>();
    s.ransac.max_iterations = r["max_iterations"].get<int>();
    s.ransac.convergence_eps_d = r["convergence_eps_d"].get<double>();
    s.ransac.convergence_eps_angle = r["convergence_eps_angle_deg"].get<double>() * kDeg;
    s.classify_threshold = m["segmentation"]["classify_threshold"].get<double>();

    c.masking.ground_threshold = m["masking"]["ground_threshold"].get<double>();
    const auto missing = m["masking"]["treat_missing_depth"].get<std::string>();
    if (missing == "blacken") {
      c.masking.treat_missing_depth = masking::MissingDepth::blacken;
    } else if (missing == "keep") {
      c.masking.treat_missing_depth = masking::MissingDepth::keep;
    } else {
      fail("masking.treat_missing_depth must be \"blacken\" or \"keep\"");
    }

    const json& g = m["grid"];
    c.grid = {g["resolution"].get<double>(), g["origin_x"].get<double>(), g["origin_z"].get<double>(),
              g["width_cells"].get<int>(), g["height_cells"].get<int>()};
    const json& cam = m["camera"];
    c.camera = {cam["fx"].get<double>(), cam["fy"].get<double>(), cam["cx"].get<double>(),
                cam["cy"].get<double>(), cam["width"].get<int>(),   cam["height"].get<int>()};
    const json& l = m["loss"];
    c.loss = {l["alpha"].get<double>(), l["beta"].get<double>(), l["smooth"].get<double>(), l["clamp_eps"].get<double>()};

    const json& mo = m["mosts"];
    c.mosts.encoder_channels = mo["encoder_channels"].get<std::vector<int>>();
    c.mosts.embedding_channels = mo["embedding_channels"].get<int>();
    c.mosts.decoder_blocks = mo["decoder_blocks"].get<int>();
    c.mosts.groups = mo["groups"].get<int>();
    c.mosts.attention_reduction = mo["attention_reduction"].get<int>();
    c.mosts.seed = mo["seed"].get<std::uint64_t>();
    c.mosts.monotone_head = mo["monotone_head"].get<bool>();

    const json& p = m["perlin"];
    c.perlin = {p["grid_size"].get<int>(), p["octaves"].get<int>(), p["persistence"].get<double>(),
                p["lacunarity"].get<double>()};

    const json& sy = m["synth"];
    auto& sp = c.synth;
    sp.floor_min_x = sy["floor_min_x"].get<double>();
    sp.floor_max_x = sy["floor_max_x"].get<double>();
    sp.floor_min_z = sy["floor_min_z"].get<double>();
    sp.floor_max_z = sy["floor_max_z"].get<double>();
    sp.camera_height = sy["camera_height"].get<double>();
    sp.walls = sy["walls"].get<int>();
    sp.wall_height = sy["wall_height"].get<double>();
    sp.boxes.clear();
    for (const auto& b : sy["boxes"]) {
      json full = box_template();
      merge(full, b);
      sp.boxes.push_back({full["center_x"].get<double>(), full["center_z"].get<double>(), full["size_x"].get<double>(),
                          full["size_z"].get<double>(), full["height"].get<double>()});
    }
    sp.box_count = sy["box_count"].get<int>();
    sp.box_min_height = sy["box_min_height"].get<double>();
    sp.box_max_height = sy["box_max_height"].get<double>();
    sp.box_min_size = sy["box_min_size"].get<double>();
    sp.box_max_size = sy["box_max_size"].get<double>();
    sp.density = sy["density"].get<double>();
    sp.max_points = sy["max_points"].get<std::size_t>();
    sp.noise_sigma = sy["noise_sigma"].get<double>();
    sp.outlier_fraction = sy["outlier_fraction"].get<double>();
    sp.max_tilt_deg = sy["max_tilt_deg"].get<double>();
    sp.seed = sy["seed"].get<std::uint64_t>();
    sp.attitude.reset();
    if (const json& a = sy["attitude"]; !a.is_null()) {
      section("synth.attitude",
              [&] { sp.attitude = ImuAttitude(a["pitch_deg"].get<double>() * kDeg, a["roll_deg"].get<double>() * kDeg); });
    }

    c.bench.seed = m["bench"]["seed"].get<std::uint64_t>();
    c.bench.count = m["bench"]["count"].get<std::size_t>();
  } catch (const json::exception& e) {
    fail(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail("override must look like section.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json* node = &j;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty() || !node->is_object() || !node->contains(key)) fail("unknown key " + path);
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  *node = std::move(value);
}

PipelineConfig load(const std::filesystem::path& file, const std::vector<std::string>& overrides) {
  json j = to_json(PipelineConfig{});
  if (!file.empty()) {
    json patch = json::parse(io::read_text(file), nullptr, false);
    if (patch.is_discarded()) fail(file.string() + ": not valid JSON");
    check_known(j, patch, "");
    merge(j, patch);
  }
  for (const auto& o : overrides) apply_override(j, o);
  return from_json(j);
}

}  // namespace groundsight::config
