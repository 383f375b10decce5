#include "groundsight/filtering/voxel_grid.hpp"

#include <cmath>
#include <vector>

namespace groundsight::filtering {
namespace {

std::int64_t cell_of(double coord, double cell) {
  const double q = std::floor(coord / cell);
  if (!(std::abs(q) < 4.0e18)) {
    throw Error(ErrorKind::InvalidArgument, "coordinate too large for voxel indexing");
  }
  return static_cast<std::int64_t>(q);
}

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

struct Sum {
  double x = 0.0, y = 0.0, z = 0.0;
  double n = 0.0;
};

// Three signed 21-bit cell indices in one word; false when any is out of range.
bool pack(const VoxelIndex& k, std::uint64_t& out) {
  constexpr std::int64_t lim = std::int64_t{1} << 20;
  if (k[0] < -lim || k[0] >= lim || k[1] < -lim || k[1] >= lim || k[2] < -lim || k[2] >= lim) return false;
  const auto u = [&](int a) { return static_cast<std::uint64_t>(k[static_cast<std::size_t>(a)] + lim); };
  out = u(0) | (u(1) << 21) | (u(2) << 42);
  return true;
}

std::uint64_t hash_key(std::uint64_t k) { return mix(k); }
std::uint64_t hash_key(const VoxelIndex& k) {
  std::uint64_t h = mix(static_cast<std::uint64_t>(k[0]));
  h = mix(h ^ (static_cast<std::uint64_t>(k[1]) + 0x9e3779b97f4a7c15ULL));
  return mix(h ^ (static_cast<std::uint64_t>(k[2]) + 0x632be59bd9b4e019ULL));
}

// Insertion-ordered accumulation keyed by Key; the table doubles at half load.
template <typename Key>
class VoxelTable {
 public:
  VoxelTable() : slots_(1u << 12, 0), mask_((1u << 12) - 1) {}

  Sum& at(const Key& key) {
    std::size_t s = hash_key(key) & mask_;
    for (;;) {
      const std::uint32_t slot = slots_[s];
      if (slot == 0) break;
      if (keys_[slot - 1] == key) return sums_[slot - 1];
      s = (s + 1) & mask_;
    }
    keys_.push_back(key);
    sums_.emplace_back();
    slots_[s] = static_cast<std::uint32_t>(keys_.size());
    if (keys_.size() * 2 > slots_.size()) grow();
    return sums_.back();
  }

  const std::vector<Sum>& sums() const { return sums_; }

 private:
  void grow() {
    slots_.assign(slots_.size() * 2, 0);
    mask_ = slots_.size() - 1;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      std::size_t s = hash_key(keys_[i]) & mask_;
      while (slots_[s] != 0) s = (s + 1) & mask_;
      slots_[s] = static_cast<std::uint32_t>(i + 1);
    }
  }

  std::vector<std::uint32_t> slots_;  // 1 + entry index, 0 = empty
  std::size_t mask_;
  std::vector<Key> keys_;
  std::vector<Sum> sums_;
};

template <typename Key>
PointCloud downsample(const PointCloud& cloud, const std::vector<Key>& keys) {
  VoxelTable<Key> table;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Point3& p = cloud.points[i];
    Sum& acc = table.at(keys[i]);
    acc.x += p.x;
    acc.y += p.y;
    acc.z += p.z;
    acc.n += 1.0;
  }
  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(table.sums().size());
  for (const Sum& acc : table.sums()) out.points.push_back({acc.x / acc.n, acc.y / acc.n, acc.z / acc.n});
  return out;
}

}  // namespace

void VoxelGridParams::validate() const {
  if (!(cell_x > 0.0) || !(cell_y > 0.0) || !(cell_z > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "voxel cell sizes must be positive");
  }
}

VoxelIndex voxel_index(const Point3& p, const VoxelGridParams& params) {
  return {cell_of(p.x, params.cell_x), cell_of(p.y, params.cell_y), cell_of(p.z, params.cell_z)};
}

PointCloud voxel_grid_downsample(const PointCloud& cloud, const VoxelGridParams& params) {
  params.validate();
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "voxel_grid_downsample on an empty cloud");

  std::vector<std::uint64_t> packed(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!pack(voxel_index(cloud.points[i], params), packed[i])) {
      std::vector<VoxelIndex> keys(cloud.size());
      for (std::size_t j = 0; j < cloud.size(); ++j) keys[j] = voxel_index(cloud.points[j], params);
      return downsample(cloud, keys);
    }
  }
  return downsample(cloud, packed);
}

}  // namespace groundsight::filtering
