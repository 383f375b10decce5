// groundsight command-line front end.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groundsight/collage/collage.hpp"
#include "groundsight/config/pipeline_config.hpp"
#include "groundsight/core/error.hpp"
#include "groundsight/core/io.hpp"
#include "groundsight/core/parallel.hpp"
#include "groundsight/core/random.hpp"
#include "groundsight/mapping/grid.hpp"
#include "groundsight/masking/ground_mask.hpp"
#include "groundsight/mosts/grad_check.hpp"
#include "groundsight/mosts/model.hpp"
#include "groundsight/mosts/weights_io.hpp"
#include "groundsight/plane/result_io.hpp"
#include "groundsight/plane/segmentation.hpp"
#include "groundsight/synth/benchmark.hpp"
#include "groundsight/synth/scene.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace groundsight;

namespace {

struct Options {
  std::string config_file;
  std::vector<std::string> overrides;
  int threads = 0;

  // segment / mask / traverse
  std::string in, rgb, depth, plane_file, mask_file, out, mask_out;
  double pitch = 0.0;
  double roll = 0.0;

  // collage
  std::string bank;
  std::uint64_t seed = 0;
  int count = 1;
  int k = 3;

  // synth / bench
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> count_override;

  // mosts-demo / grad-check
  std::string query, reference, weights, save_weights;
  int instances = 100;
  int size = 8;
};

void write_json(const fs::path& path, const json& j) { io::write_text(path, j.dump(2) + "\n"); }

std::string numbered(const char* prefix, int i, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%03d.%s", prefix, i, ext);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

int cmd_segment(const Options& o, const config::PipelineConfig& cfg) {
  const PointCloud cloud = io::read_cloud(o.in);
  const auto result = plane::segment_ground(cloud, ImuAttitude(o.pitch, o.roll), cfg.segmentation);
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  ensure_dir(dir);
  plane::write_segmentation(dir / "labeled.ply", dir / "plane.json", result);
  mapping::write_grid(dir / "occupancy.pgm", dir / "occupancy.json", mapping::project_occupancy(result, cfg.grid));
  const auto& n = result.plane.normal();
  std::printf("plane n=(%.6f, %.6f, %.6f) d=%.6f, %zu points, %.3f ms\n", n.x, n.y, n.z, result.plane.offset(),
              cloud.size(), result.timing("total"));
  return 0;
}

int cmd_mask(const Options& o, const config::PipelineConfig& cfg) {
  const ImageRGB rgb = io::read_ppm(o.rgb);
  const ImageGray16 depth = io::read_pgm16(o.depth);
  const PlaneModel plane = plane::read_plane_json(o.plane_file);
  const ImuAttitude att(o.pitch, o.roll);
  io::write_ppm(o.out, masking::mask_ground(rgb, depth, plane, cfg.camera, att, cfg.masking));
  if (!o.mask_out.empty()) {
    io::write_mask(o.mask_out, masking::ground_pixel_mask(depth, plane, cfg.camera, att, cfg.masking));
  }
  return 0;
}

int cmd_traverse(const Options& o, const config::PipelineConfig& cfg) {
  const BinaryMask mask = io::read_mask(o.mask_file);
  const PlaneModel plane = plane::read_plane_json(o.plane_file);
  const auto grid = mapping::traversability_from_mask(mask, plane, cfg.camera, ImuAttitude(o.pitch, o.roll), cfg.grid);
  fs::path sidecar = o.out;
  sidecar.replace_extension(".json");
  mapping::write_grid(o.out, sidecar, grid);
  return 0;
}

int cmd_collage(const Options& o, const config::PipelineConfig& cfg) {
  if (o.k < 1 || o.k > collage::kMaxClasses) throw Error(ErrorKind::Config, "--k must lie in [1, 5]");
  if (o.count < 1) throw Error(ErrorKind::Config, "--count must be >= 1");
  const auto bank = collage::TextureBank::load(o.bank);
  const fs::path dir = o.out;
  ensure_dir(dir);

  json names = json::array();
  for (const auto& c : bank.classes) names.push_back(c.name);
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(bank.fingerprint()));

  json triples = json::array();
  for (int i = 0; i < o.count; ++i) {
    const std::uint64_t s = sub_seed(o.seed, static_cast<std::uint64_t>(i));
    const auto t = collage::make_triple(bank, o.k, s, cfg.perlin);
    io::write_ppm(dir / numbered("q", i, "ppm"), t.query);
    io::write_ppm(dir / numbered("r", i, "ppm"), t.reference);
    io::write_mask(dir / numbered("g", i, "pgm"), t.truth);
    json cls = json::array();
    for (int c : t.classes) cls.push_back(bank.classes[static_cast<std::size_t>(c)].name);
    triples.push_back({{"index", i},
                       {"seed", s},
                       {"classes", cls},
                       {"class_indices", t.classes},
                       {"sources", t.sources},
                       {"target", t.target_class_index},
                       {"target_class", cls[static_cast<std::size_t>(t.target_class_index)]},
                       {"reference_source", t.reference_source}});
  }
  json perlin{{"grid_size", cfg.perlin.grid_size},
              {"octaves", cfg.perlin.octaves},
              {"persistence", cfg.perlin.persistence},
              {"lacunarity", cfg.perlin.lacunarity}};
  write_json(dir / "manifest.json", {{"seed", o.seed},
                                     {"k", o.k},
                                     {"count", o.count},
                                     {"size", collage::kTripleSize},
                                     {"bank_fingerprint", fp},
                                     {"bank_classes", names},
                                     {"perlin", perlin},
                                     {"triples", triples}});
  return 0;
}

int cmd_synth(const Options& o, config::PipelineConfig cfg) {
  if (o.seed_override) cfg.synth.seed = *o.seed_override;
  const auto scene = synth::synth_scene(cfg.synth);
  io::write_ply(o.out, scene.raw, plane::label_bytes(scene.labels));
  fs::path sidecar = o.out;
  sidecar.replace_extension(".json");
  std::size_t ground = 0;
  for (auto l : scene.labels) ground += l == plane::PointLabel::ground;
  write_json(sidecar, {{"seed", cfg.synth.seed},
                       {"points", scene.raw.size()},
                       {"ground_points", ground},
                       {"attitude", {{"pitch", scene.attitude.pitch()}, {"roll", scene.attitude.roll()}}},
                       {"plane", plane::plane_to_json(scene.plane)},
                       {"boxes", scene.boxes.size()}});
  return 0;
}

int cmd_bench(const Options& o, const config::PipelineConfig& cfg) {
  const std::uint64_t seed = o.seed_override.value_or(cfg.bench.seed);
  const std::size_t count = o.count_override.value_or(cfg.bench.count);
  if (count < 1) throw Error(ErrorKind::Config, "--count must be >= 1");
  const auto report = synth::run_benchmark(synth::seeded_specs(cfg.synth, seed, count), cfg.segmentation);
  const json j = synth::to_json(report);
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json(o.out, j);
    std::printf("%zu scenes, mean mIoU %.4f, mean ground IoU %.4f, %zu failed\n", report.scenes.size(),
                report.miou.mean, report.iou_ground.mean, report.failed);
  }
  return 0;
}

int cmd_mosts_demo(const Options& o, const config::PipelineConfig& cfg) {
  const ImageRGB q = io::read_ppm(o.query);
  const ImageRGB r = io::read_ppm(o.reference);
  const mosts::MostsWeights w =
      o.weights.empty() ? mosts::MostsWeights::init(cfg.mosts) : mosts::load_weights(o.weights, cfg.mosts);
  if (!o.save_weights.empty()) mosts::save_weights(o.save_weights, w);
  io::write_pgm(o.out, mosts::probability_image(mosts::mosts_forward(q, r, cfg.mosts, w)));
  return 0;
}

int cmd_grad_check(const Options& o, const config::PipelineConfig& cfg) {
  const auto res = mosts::run_grad_check(o.instances, o.size, o.seed, cfg.loss);
  const bool pass = res.max_relative_error <= 1e-4;
  std::printf("grad-check: %d instances of %dx%d, max relative error %.3e, max abs error %.3e: %s\n", res.instances,
              o.size, o.size, res.max_relative_error, res.max_abs_error, pass ? "PASS" : "FAIL");
  return pass ? 0 : 4;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Io:
      return 3;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground segmentation, ground masking and texture-collage tools"};
  app.set_version_flag("--version", std::string("groundsight ") + GROUNDSIGHT_VERSION);
  app.require_subcommand(1);

  Options o;
  app.add_option("--config", o.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--set", o.overrides, "Override a config value, section.key=value")->allow_extra_args(false);
  app.add_option("--threads", o.threads, "Worker threads (default: GROUNDSIGHT_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  auto add_attitude = [&o](CLI::App* sub) {
    sub->add_option("--pitch", o.pitch, "Camera pitch in radians");
    sub->add_option("--roll", o.roll, "Camera roll in radians");
  };

  auto* segment = app.add_subcommand("segment", "Ground-plane segmentation of a point cloud");
  segment->add_option("--in", o.in, "Input .ply or .csv cloud")->required();
  segment->add_option("--out", o.out, "Output directory (default .)");
  add_attitude(segment);

  auto* mask = app.add_subcommand("mask", "Black out non-ground pixels of an RGB frame");
  mask->add_option("--rgb", o.rgb, "Input PPM")->required();
  mask->add_option("--depth", o.depth, "16-bit PGM depth in millimeters")->required();
  mask->add_option("--plane", o.plane_file, "Plane JSON from segment")->required();
  mask->add_option("--out", o.out, "Output PPM")->required();
  mask->add_option("--mask-out", o.mask_out, "Also write the binary ground mask as PGM");
  add_attitude(mask);

  auto* traverse = app.add_subcommand("traverse", "Project a drivable-area mask onto a traversability grid");
  traverse->add_option("--mask", o.mask_file, "Mask PGM, non-zero = drivable")->required();
  traverse->add_option("--plane", o.plane_file, "Plane JSON from segment")->required();
  traverse->add_option("--out", o.out, "Output PGM; a .json sidecar is written next to it")->required();
  add_attitude(traverse);

  auto* coll = app.add_subcommand("collage", "Generate (query, reference, truth) texture-collage triples");
  coll->add_option("--bank", o.bank, "Directory of class subdirectories holding PPM images")->required();
  coll->add_option("--seed", o.seed, "Seed");
  coll->add_option("--count", o.count, "Number of triples");
  coll->add_option("--k", o.k, "Textures per collage, 1..5");
  coll->add_option("--out", o.out, "Output directory")->required();

  auto* syn = app.add_subcommand("synth", "Write a labeled synthetic indoor scene");
  syn->add_option("--seed", o.seed_override, "Scene seed (default synth.seed)");
  syn->add_option("--out", o.out, "Output PLY with a label property")->required();

  auto* bench = app.add_subcommand("bench", "Benchmark segmentation on seeded synthetic scenes");
  bench->add_option("--seed", o.seed_override, "First scene seed (default bench.seed)");
  bench->add_option("--count", o.count_override, "Number of scenes (default bench.count)");
  bench->add_option("--out", o.out, "Report path (default stdout)");

  auto* demo = app.add_subcommand("mosts-demo", "Run the one-shot texture segmentation forward pass");
  demo->add_option("--query", o.query, "Query PPM")->required();
  demo->add_option("--reference", o.reference, "Reference PPM")->required();
  demo->add_option("--weights", o.weights, "Weight file (default: seeded initialization)");
  demo->add_option("--save-weights", o.save_weights, "Write the weights used");
  demo->add_option("--out", o.out, "Probability map PGM")->required();

  auto* grad = app.add_subcommand("grad-check", "Check the combo loss gradient against finite differences");
  grad->add_option("--instances", o.instances, "Random instances")->check(CLI::PositiveNumber);
  grad->add_option("--size", o.size, "Side of each instance")->check(CLI::PositiveNumber);
  grad->add_option("--seed", o.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (o.threads > 0) set_thread_count(o.threads);
    const auto cfg = config::load(o.config_file, o.overrides);
    if (segment->parsed()) return cmd_segment(o, cfg);
    if (mask->parsed()) return cmd_mask(o, cfg);
    if (traverse->parsed()) return cmd_traverse(o, cfg);
    if (coll->parsed()) return cmd_collage(o, cfg);
    if (syn->parsed()) return cmd_synth(o, cfg);
    if (bench->parsed()) return cmd_bench(o, cfg);
    if (demo->parsed()) return cmd_mosts_demo(o, cfg);
    if (grad->parsed()) return cmd_grad_check(o, cfg);
  } catch (const Error& e) {
    std::cerr << "groundsight: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "groundsight: Io: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "groundsight: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
