#include "groundsight/plane/segmentation.hpp"

#include <chrono>

#include "groundsight/core/geometry.hpp"

namespace groundsight::plane {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink), start_(now()), last_(start_) {}

  void mark(const char* stage) {
    const auto t = now();
    sink_.push_back({stage, ms(last_, t)});
    last_ = t;
  }
  void finish() { sink_.push_back({"total", ms(start_, now())}); }

 private:
  using Clock = std::chrono::steady_clock;
  static Clock::time_point now() { return Clock::now(); }
  static double ms(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  }

  std::vector<StageTiming>& sink_;
  Clock::time_point start_;
  Clock::time_point last_;
};

}  // namespace

void SegmentationConfig::validate() const {
  voxel.validate();
  radius.validate();
  ransac.validate();
  if (!(classify_threshold > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "classify_threshold must be positive");
  }
}

double SegmentationResult::timing(const std::string& stage) const {
  for (const auto& t : timings) {
    if (t.stage == stage) return t.ms;
  }
  return 0.0;
}

SegmentationResult segment_ground(const PointCloud& raw, const ImuAttitude& att,
                                  const SegmentationConfig& config) {
  config.validate();
  if (raw.empty()) throw Error(ErrorKind::EmptyCloud, "segment_ground on an empty cloud");

  SegmentationResult result;
  StageClock clock(result.timings);

  result.aligned = rotate_attitude(raw, att);
  clock.mark("align");

  const PointCloud down = filtering::voxel_grid_downsample(result.aligned, config.voxel);
  clock.mark("voxel");

  const PointCloud candidates = filtering::radius_outlier_removal(down, config.radius);
  clock.mark("radius");
  if (candidates.empty()) {
    throw Error(ErrorKind::AllPointsFiltered, "radius outlier removal rejected every point");
  }
  result.candidate_count = candidates.size();

  const auto seed = select_seed_set(candidates, config.ransac.seed_fraction);
  result.seed_count = seed.size();
  clock.mark("seed");

  const RansacResult fit = ransac_refine(candidates, seed, config.ransac);
  result.plane = fit.plane;
  result.converged = fit.converged;
  result.iterations = fit.iterations;
  clock.mark("ransac");

  result.labels = classify_points(result.aligned, result.plane, config.classify_threshold);
  clock.mark("classify");
  clock.finish();
  return result;
}

}  // namespace groundsight::plane
