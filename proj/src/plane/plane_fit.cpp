#include "groundsight/plane/plane_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "groundsight/core/geometry.hpp"
#include "groundsight/core/parallel.hpp"

namespace groundsight::plane {

void RansacParams::validate() const {
  if (!(seed_fraction > 0.0 && seed_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "seed_fraction must lie in (0, 1]");
  }
  if (!(inlier_threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "inlier_threshold must be positive");
  if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max_iterations must be >= 1");
  if (!(convergence_eps_d >= 0.0) || !(convergence_eps_angle >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "convergence tolerances must be non-negative");
  }
}

namespace {

// (height, index) pairs with the m lowest moved to the front; this order is a
// stable sort on height.
std::vector<std::pair<double, std::size_t>> lowest(const PointCloud& candidates, double fraction, std::size_t& m) {
  if (candidates.empty()) throw Error(ErrorKind::EmptyCloud, "select_seed on an empty cloud");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "seed fraction must lie in (0, 1]");
  }
  const std::size_t n = candidates.size();
  const auto want = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  m = std::clamp<std::size_t>(want, 1, n);
  std::vector<std::pair<double, std::size_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) keyed[i] = {candidates.points[i].y, i};
  if (m < n) std::nth_element(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(m), keyed.end());
  return keyed;
}

}  // namespace

std::vector<std::size_t> select_seed_indices(const PointCloud& candidates, double fraction) {
  std::size_t m = 0;
  auto keyed = lowest(candidates, fraction, m);
  std::sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = keyed[i].second;
  return idx;
}

std::vector<std::size_t> select_seed_set(const PointCloud& candidates, double fraction) {
  std::size_t m = 0;
  const auto keyed = lowest(candidates, fraction, m);
  std::vector<std::uint8_t> in(candidates.size(), 0);
  for (std::size_t i = 0; i < m; ++i) in[keyed[i].second] = 1;
  std::vector<std::size_t> idx;
  idx.reserve(m);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) idx.push_back(i);
  }
  return idx;
}

PointCloud select_seed(const PointCloud& candidates, double fraction) {
  PointCloud out;
  out.frame = candidates.frame;
  for (std::size_t i : select_seed_indices(candidates, fraction)) out.points.push_back(candidates.points[i]);
  return out;
}

PlaneModel fit_plane_pca(std::span<const Point3> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorKind::DegenerateGeometry, "plane fit needs at least three points");

  Point3 sum;
  for (const Point3& p : points) sum = sum + p;
  const Point3 centroid = (1.0 / static_cast<double>(n)) * sum;

  Eigen::MatrixX3d centered(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const Point3 q = points[i] - centroid;
    centered.row(static_cast<Eigen::Index>(i)) << q.x, q.y, q.z;
  }
  // A = QR leaves the singular values and right singular vectors in the 3x3 R.
  const Eigen::HouseholderQR<Eigen::MatrixX3d> qr(centered);
  const Eigen::Matrix3d r = qr.matrixQR().topRows<3>().triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(1) < 1e-12 * sv(0)) {
    throw Error(ErrorKind::DegenerateGeometry, "points are collinear or coincident");
  }
  const Eigen::Vector3d nrm = svd.matrixV().col(2);
  const Point3 normal{nrm(0), nrm(1), nrm(2)};
  return PlaneModel::from_point_normal(centroid, normal);
}

namespace {

std::vector<std::uint8_t> inlier_flags(const PointCloud& cloud, const PlaneModel& plane, double threshold,
                                       std::size_t& count) {
  std::vector<std::uint8_t> flags(cloud.size());
  count = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    flags[i] = std::abs(signed_distance(plane, cloud.points[i])) <= threshold;
    count += flags[i];
  }
  return flags;
}

std::vector<Point3> gather(const PointCloud& cloud, const std::vector<std::uint8_t>& flags, std::size_t count) {
  std::vector<Point3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (flags[i]) out.push_back(cloud.points[i]);
  }
  return out;
}

}  // namespace

RansacResult ransac_refine(const PointCloud& candidates, const RansacParams& params) {
  params.validate();
  const auto seed = select_seed_indices(candidates, params.seed_fraction);
  return ransac_refine(candidates, seed, params);
}

RansacResult ransac_refine(const PointCloud& candidates, std::span<const std::size_t> seed,
                           const RansacParams& params) {
  params.validate();
  if (candidates.empty()) throw Error(ErrorKind::EmptyCloud, "ransac_refine on an empty cloud");

  std::vector<std::uint8_t> members(candidates.size(), 0);
  for (std::size_t i : seed) {
    if (i >= candidates.size()) throw Error(ErrorKind::InvalidArgument, "seed index out of range");
    members[i] = 1;
  }
  // Fit in index order so the result depends on the seed set, not its ordering.
  std::vector<Point3> seed_points;
  seed_points.reserve(seed.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (members[i]) seed_points.push_back(candidates.points[i]);
  }

  RansacResult result;
  result.plane = fit_plane_pca(seed_points);
  result.inlier_count = seed_points.size();

  while (result.iterations < params.max_iterations) {
    std::size_t count = 0;
    auto flags = inlier_flags(candidates, result.plane, params.inlier_threshold, count);
    if (flags == members) {
      result.converged = true;
      break;
    }
    if (count < 3) break;  // keep the previous plane; too few inliers to refit
    const PlaneModel next = fit_plane_pca(gather(candidates, flags, count));
    ++result.iterations;
    result.inlier_history.push_back(count);
    const double dd = std::abs(next.offset() - result.plane.offset());
    const double da = normal_angle(next, result.plane);
    result.plane = next;
    result.inlier_count = count;
    members = std::move(flags);
    if (dd <= params.convergence_eps_d && da <= params.convergence_eps_angle) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<PointLabel> classify_points(const PointCloud& cloud, const PlaneModel& plane, double threshold) {
  if (!(threshold >= 0.0)) throw Error(ErrorKind::InvalidArgument, "threshold must be non-negative");
  std::vector<PointLabel> labels(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      labels[i] = std::abs(signed_distance(plane, cloud.points[i])) <= threshold ? PointLabel::ground
                                                                               : PointLabel::obstacle;
    }
  });
  return labels;
}

}  // namespace groundsight::plane
