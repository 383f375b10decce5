#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "groundsight/collage/texture_bank.hpp"
#include "groundsight/core/random.hpp"
#include "groundsight/core/types.hpp"
#include "groundsight/filtering/voxel_grid.hpp"

namespace gs_test {

using groundsight::BinaryMask;
using groundsight::ImageRGB;
using groundsight::Point3;
using groundsight::PointCloud;
using groundsight::Rng;

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);

/// Runs a shell command, returns its exit status.
int run(const std::string& command);

/// Up to max_n points in a cube of side `extent`, with some exact duplicates
/// and a few tight clusters so that ties and dense cells occur.
PointCloud random_cloud(Rng& rng, std::size_t max_n, double extent);

// Brute-force references.
std::vector<Point3> voxel_oracle(const PointCloud& cloud, const groundsight::filtering::VoxelGridParams& params);
std::size_t ball_count_oracle(const PointCloud& cloud, const Point3& p, double r);
std::vector<bool> radius_keep_oracle(const PointCloud& cloud, double r, std::size_t min_neighbors);

/// Tileable texture whose look is fixed by (style, seed): stripes, checks or
/// blobs with a per-style palette plus mild noise.
ImageRGB texture_image(int style, std::uint64_t seed, int size);
/// i.i.d. uniform RGB noise.
ImageRGB noise_image(std::uint64_t seed, int size);

groundsight::collage::TextureBank make_bank(int classes, int per_class, int size, std::uint64_t seed);
void write_bank(const groundsight::collage::TextureBank& bank, const std::filesystem::path& dir);

/// Removes every "timings_ms" key, recursively.
nlohmann::json strip_timings(nlohmann::json j);

/// 4-connected components of ones, via union-find.
int components_oracle(const BinaryMask& mask);

}  // namespace gs_test
