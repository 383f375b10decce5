#include "groundsight/synth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "groundsight/core/error.hpp"
#include "groundsight/core/geometry.hpp"
#include "groundsight/core/random.hpp"

namespace groundsight::synth {
namespace {

struct Patch {
  Surface surface;
  std::int16_t object;
  double area;
  std::function<Point3(Rng&)> sample;  // aligned-frame point on the surface
};

bool overlaps(const Box& a, const Box& b, double gap) {
  return std::abs(a.center_x - b.center_x) < 0.5 * (a.size_x + b.size_x) + gap &&
         std::abs(a.center_z - b.center_z) < 0.5 * (a.size_z + b.size_z) + gap;
}

bool inside_footprint(const Box& b, double x, double z) {
  return std::abs(x - b.center_x) <= 0.5 * b.size_x && std::abs(z - b.center_z) <= 0.5 * b.size_z;
}

}  // namespace

void SceneSpec::validate() const {
  auto fail = [](const char* m) { throw Error(ErrorKind::InvalidArgument, m); };
  if (!(floor_max_x > floor_min_x && floor_max_z > floor_min_z)) fail("floor extent must be non-empty");
  if (!(camera_height > 0.0)) fail("camera_height must be > 0");
  if (walls < 0 || walls > 2) fail("walls must be 0, 1 or 2");
  if (!(wall_height > 0.0)) fail("wall_height must be > 0");
  if (box_count < 0) fail("box_count must be >= 0");
  if (!(box_min_height > 0.0 && box_max_height >= box_min_height)) fail("bad box height range");
  if (!(box_min_size > 0.0 && box_max_size >= box_min_size)) fail("bad box size range");
  for (const auto& b : boxes) {
    if (!(b.size_x > 0.0 && b.size_z > 0.0 && b.height > 0.0)) fail("boxes need positive size and height");
  }
  if (!(density > 0.0)) fail("density must be > 0");
  if (max_points < 1) fail("max_points must be >= 1");
  if (!(noise_sigma >= 0.0)) fail("noise_sigma must be >= 0");
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) fail("outlier_fraction must lie in [0, 1)");
  if (!(max_tilt_deg >= 0.0 && max_tilt_deg < 90.0)) fail("max_tilt_deg must lie in [0, 90)");
}

LabeledScene synth_scene(const SceneSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  LabeledScene scene;

  if (spec.attitude) {
    scene.attitude = *spec.attitude;
  } else {
    const double t = spec.max_tilt_deg * std::numbers::pi / 180.0;
    const double pitch = rng.uniform(-t, t);
    const double roll = rng.uniform(-t, t);
    scene.attitude = ImuAttitude(pitch, roll);
  }

  scene.boxes = spec.boxes;
  const double margin = 0.3;
  for (int i = 0; i < spec.box_count; ++i) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Box b;
      b.size_x = rng.uniform(spec.box_min_size, spec.box_max_size);
      b.size_z = rng.uniform(spec.box_min_size, spec.box_max_size);
      b.height = rng.uniform(spec.box_min_height, spec.box_max_height);
      const double hx = 0.5 * b.size_x + margin;
      const double hz = 0.5 * b.size_z + margin;
      if (spec.floor_max_x - spec.floor_min_x <= 2 * hx || spec.floor_max_z - spec.floor_min_z <= 2 * hz) break;
      b.center_x = rng.uniform(spec.floor_min_x + hx, spec.floor_max_x - hx);
      b.center_z = rng.uniform(spec.floor_min_z + hz, spec.floor_max_z - hz);
      if (std::none_of(scene.boxes.begin(), scene.boxes.end(), [&](const Box& o) { return overlaps(b, o, 0.05); })) {
        scene.boxes.push_back(b);
        break;
      }
    }
  }

  const double fy = -spec.camera_height;
  const double x0 = spec.floor_min_x, x1 = spec.floor_max_x;
  const double z0 = spec.floor_min_z, z1 = spec.floor_max_z;
  const auto& boxes = scene.boxes;

  std::vector<Patch> patches;
  double footprint = 0.0;
  for (const auto& b : boxes) footprint += b.size_x * b.size_z;
  patches.push_back({Surface::floor, 0, std::max((x1 - x0) * (z1 - z0) - footprint, 0.0), [&](Rng& r) {
                       for (;;) {
                         const double x = r.uniform(x0, x1);
                         const double z = r.uniform(z0, z1);
                         if (std::none_of(boxes.begin(), boxes.end(),
                                          [&](const Box& b) { return inside_footprint(b, x, z); })) {
                           return Point3{x, fy, z};
                         }
                       }
                     }});
  const double wh = spec.wall_height;
  if (spec.walls >= 1) {
    patches.push_back({Surface::wall, 0, (x1 - x0) * wh, [&](Rng& r) {
                         const double x = r.uniform(x0, x1);
                         return Point3{x, fy + r.uniform(0.0, wh), z1};
                       }});
  }
  if (spec.walls >= 2) {
    patches.push_back({Surface::wall, 1, (z1 - z0) * wh, [&](Rng& r) {
                         const double z = r.uniform(z0, z1);
                         return Point3{x0, fy + r.uniform(0.0, wh), z};
                       }});
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i];
    const auto id = static_cast<std::int16_t>(i);
    const double bx0 = b.center_x - 0.5 * b.size_x, bx1 = b.center_x + 0.5 * b.size_x;
    const double bz0 = b.center_z - 0.5 * b.size_z, bz1 = b.center_z + 0.5 * b.size_z;
    const double top = fy + b.height;
    patches.push_back({Surface::box_top, id, b.size_x * b.size_z, [=](Rng& r) {
                         const double x = r.uniform(bx0, bx1);
                         return Point3{x, top, r.uniform(bz0, bz1)};
                       }});
    for (double zf : {bz0, bz1}) {
      patches.push_back({Surface::box_side, id, b.size_x * b.height, [=](Rng& r) {
                           const double x = r.uniform(bx0, bx1);
                           return Point3{x, fy + r.uniform(0.0, b.height), zf};
                         }});
    }
    for (double xf : {bx0, bx1}) {
      patches.push_back({Surface::box_side, id, b.size_z * b.height, [=](Rng& r) {
                           const double z = r.uniform(bz0, bz1);
                           return Point3{xf, fy + r.uniform(0.0, b.height), z};
                         }});
    }
  }

  double area = 0.0;
  for (const auto& p : patches) area += p.area;
  const double wanted = spec.density * area;
  const double budget = std::floor(static_cast<double>(spec.max_points) * (1.0 - spec.outlier_fraction));
  const double scale = wanted > budget ? budget / wanted : 1.0;

  std::vector<Point3> aligned;
  for (const auto& p : patches) {
    const auto n = static_cast<std::size_t>(std::llround(spec.density * p.area * scale));
    for (std::size_t i = 0; i < n; ++i) {
      const Point3 q = p.sample(rng);
      aligned.push_back(q);
      scene.tags.push_back({p.surface, p.object});
      scene.labels.push_back(p.surface == Surface::floor ? plane::PointLabel::ground : plane::PointLabel::obstacle);
      scene.true_height.push_back(q.y - fy);
    }
  }

  // Range noise along the viewing ray.
  if (spec.noise_sigma > 0.0) {
    for (auto& q : aligned) {
      const double e = spec.noise_sigma * rng.normal();
      q = q + (e / norm(q)) * q;
    }
  }

  const double surface_n = static_cast<double>(aligned.size());
  auto outliers = static_cast<std::size_t>(std::llround(surface_n * spec.outlier_fraction / (1.0 - spec.outlier_fraction)));
  outliers = std::min(outliers, spec.max_points - std::min(spec.max_points, aligned.size()));
  for (std::size_t i = 0; i < outliers; ++i) {
    const double x = rng.uniform(x0, x1);
    const double y = rng.uniform(fy - 0.3, fy + wh);
    const double z = rng.uniform(z0, z1);
    aligned.push_back({x, y, z});
    scene.tags.push_back({Surface::outlier, 0});
    scene.labels.push_back(plane::PointLabel::obstacle);
    scene.true_height.push_back(y - fy);
  }

  const Rotation3 a = alignment_rotation(scene.attitude);
  scene.raw.frame = Frame::raw;
  scene.raw.points.reserve(aligned.size());
  for (const auto& q : aligned) scene.raw.points.push_back(a.apply_transposed(q));
  scene.plane = PlaneModel::from_coefficients(0.0, 1.0, 0.0, spec.camera_height);
  return scene;
}

}  // namespace groundsight::synth
