#include "groundsight/filtering/kdtree.hpp"

#include <algorithm>
#include <numeric>

#include "groundsight/core/parallel.hpp"

namespace groundsight::filtering {
namespace {

inline double coord(const Point3& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

inline double dist2(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

KdTree::KdTree(const PointCloud& cloud) : points_(cloud.points) {
  if (points_.empty()) throw Error(ErrorKind::EmptyCloud, "cannot build a kd-tree over an empty cloud");
  if (points_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::InvalidArgument, "kd-tree supports at most 2^32-1 points");
  }
  nodes_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) nodes_[i] = {points_[i], static_cast<std::uint32_t>(i)};
  axis_.assign(points_.size(), 0);
  build(0, points_.size());
}

void KdTree::build(std::size_t lo, std::size_t hi) {
  if (hi - lo <= kLeafSize) return;
  Point3 mn = nodes_[lo].p;
  Point3 mx = mn;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const Point3& p = nodes_[i].p;
    mn = {std::min(mn.x, p.x), std::min(mn.y, p.y), std::min(mn.z, p.z)};
    mx = {std::max(mx.x, p.x), std::max(mx.y, p.y), std::max(mx.z, p.z)};
  }
  const double ext[3] = {mx.x - mn.x, mx.y - mn.y, mx.z - mn.z};
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (ext[a] > ext[axis]) axis = a;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const auto first = nodes_.begin();
  std::nth_element(first + static_cast<std::ptrdiff_t>(lo), first + static_cast<std::ptrdiff_t>(mid),
                   first + static_cast<std::ptrdiff_t>(hi),
                   [axis](const Entry& a, const Entry& b) { return coord(a.p, axis) < coord(b.p, axis); });
  axis_[mid] = static_cast<std::uint8_t>(axis);
  build(lo, mid);
  build(mid + 1, hi);
}

// Visits every point within the ball, nearer child first; `visit` returns
// false to stop early.
template <typename Visit>
void KdTree::visit_ball(const Point3& p, double r2, Visit&& visit) const {
  struct Range {
    std::size_t lo, hi;
  };
  Range stack[128];
  int top = 0;
  stack[top++] = {0, nodes_.size()};
  while (top > 0) {
    const Range rg = stack[--top];
    if (rg.hi - rg.lo <= kLeafSize) {
      for (std::size_t i = rg.lo; i < rg.hi; ++i) {
        if (dist2(nodes_[i].p, p) <= r2 && !visit(nodes_[i].index)) return;
      }
      continue;
    }
    const std::size_t mid = rg.lo + (rg.hi - rg.lo) / 2;
    const Entry& split = nodes_[mid];
    const double diff = coord(p, axis_[mid]) - coord(split.p, axis_[mid]);
    if (dist2(split.p, p) <= r2 && !visit(split.index)) return;
    // Left holds coordinates <= split, right >= split.
    const bool go_left = diff <= 0.0 || diff * diff <= r2;
    const bool go_right = diff >= 0.0 || diff * diff <= r2;
    const Range left{rg.lo, mid};
    const Range right{mid + 1, rg.hi};
    // Push the far side first so the near side is popped next.
    if (diff <= 0.0) {
      if (go_right && right.lo < right.hi) stack[top++] = right;
      if (go_left && left.lo < left.hi) stack[top++] = left;
    } else {
      if (go_left && left.lo < left.hi) stack[top++] = left;
      if (go_right && right.lo < right.hi) stack[top++] = right;
    }
  }
}

std::size_t KdTree::count_within(const Point3& p, double r, std::size_t stop_at) const {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be non-negative");
  std::size_t count = 0;
  if (stop_at == 0) return 0;
  visit_ball(p, r * r, [&](std::uint32_t) { return ++count < stop_at; });
  return count;
}

std::vector<std::size_t> KdTree::member_counts(double r, std::size_t stop_at) const {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be non-negative");
  std::vector<std::size_t> out(points_.size(), 0);
  if (stop_at == 0) return out;
  const double r2 = r * r;
  parallel_for(nodes_.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t count = 0;
      visit_ball(nodes_[i].p, r2, [&](std::uint32_t) { return ++count < stop_at; });
      out[nodes_[i].index] = count;
    }
  });
  return out;
}

std::size_t KdTree::radius_count(const Point3& p, double r) const {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be non-negative");
  std::size_t count = 0;
  bool member = false;
  visit_ball(p, r * r, [&](std::uint32_t idx) {
    if (!member && points_[idx] == p) {
      member = true;
    } else {
      ++count;
    }
    return true;
  });
  return count;
}

std::vector<std::size_t> KdTree::radius_search(const Point3& p, double r) const {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be non-negative");
  std::vector<std::size_t> out;
  visit_ball(p, r * r, [&](std::uint32_t idx) {
    out.push_back(idx);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool KdTree::contains(const Point3& p) const {
  bool found = false;
  visit_ball(p, 0.0, [&](std::uint32_t idx) {
    found = points_[idx] == p;
    return !found;
  });
  return found;
}

}  // namespace groundsight::filtering
