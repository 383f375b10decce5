#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::plane {

enum class PointLabel : std::uint8_t { ground = 0, obstacle = 1 };

/// The iteration cap and stopping tolerances are engineering defaults.
struct RansacParams {
  double seed_fraction = 0.5;
  double inlier_threshold = 0.025;  // m
  int max_iterations = 10;
  double convergence_eps_d = 0.001;                        // m
  double convergence_eps_angle = 0.1 * 3.14159265358979323846 / 180.0;  // rad

  void validate() const;
};

/// Indices of the ceil(fraction * n) lowest points (smallest y in the aligned
/// frame), ordered by height; equal heights keep input order.
std::vector<std::size_t> select_seed_indices(const PointCloud& candidates, double fraction);
PointCloud select_seed(const PointCloud& candidates, double fraction);
/// The members of select_seed_indices in ascending index order; skips the
/// height sort when only the set matters.
std::vector<std::size_t> select_seed_set(const PointCloud& candidates, double fraction);

/// Least-squares plane: the normal is the right singular vector of the
/// centered point matrix with the smallest singular value, d = -n . centroid.
/// Throws DegenerateGeometry for fewer than three points or when the second
/// singular value falls below 1e-12 of the largest (collinear or coincident).
PlaneModel fit_plane_pca(std::span<const Point3> points);
inline PlaneModel fit_plane_pca(const PointCloud& cloud) { return fit_plane_pca(std::span<const Point3>(cloud.points)); }

struct RansacResult {
  PlaneModel plane;
  int iterations = 0;      // refits after the initial seed fit
  bool converged = false;  // false: iteration cap hit, best-so-far returned
  std::size_t inlier_count = 0;
  std::vector<std::size_t> inlier_history;  // inlier count after each refit
};

/// Seeds with select_seed(candidates, params.seed_fraction) and refines.
RansacResult ransac_refine(const PointCloud& candidates, const RansacParams& params);

/// Fits the seed, then alternates inlier selection over all candidates
/// (|distance| <= inlier_threshold) and refitting until the inlier set repeats,
/// the plane moves less than both convergence tolerances, or the iteration cap
/// is reached.
RansacResult ransac_refine(const PointCloud& candidates, std::span<const std::size_t> seed,
                           const RansacParams& params);

/// ground iff |signed_distance| <= threshold.
std::vector<PointLabel> classify_points(const PointCloud& cloud, const PlaneModel& plane, double threshold);

}  // namespace groundsight::plane
