#pragma once

#include <cstdint>
#include <vector>

#include "groundsight/collage/perlin.hpp"
#include "groundsight/collage/texture_bank.hpp"
#include "groundsight/core/types.hpp"

namespace groundsight::collage {

inline constexpr int kMaxClasses = 5;
inline constexpr int kTripleSize = 256;

/// Per-pixel class index in [0, k): argmax over k fields, class c drawn with
/// sub_seed(seed, c). Ties go to the lower index.
std::vector<std::uint8_t> partition_labels(int k, int width, int height, const PerlinParams& params,
                                           std::uint64_t seed);

/// The same partition as k binary masks.
std::vector<BinaryMask> partition_masks(int k, int width, int height, const PerlinParams& params,
                                        std::uint64_t seed);

/// Output pixel = textures[i] pixel wherever masks[i] = 1.
ImageRGB compose_collage(const std::vector<ImageRGB>& textures, const std::vector<BinaryMask>& masks);

/// Number of 4-connected regions of ones.
int count_components(const BinaryMask& mask);

struct Triple {
  ImageRGB query;
  ImageRGB reference;
  BinaryMask truth;
  int target_class_index = 0;  // position among `classes`
  std::vector<int> classes;    // bank class indices, in partition order
  std::vector<int> sources;    // image index within each class used in the query
  int reference_source = 0;    // image index of the reference within the target class
  std::uint64_t seed = 0;

  bool operator==(const Triple&) const = default;
};

/// Draw order from Rng(seed): k distinct classes (partial Fisher-Yates over
/// non-empty classes), one image per class, the target position, the reference
/// image, then the partition seed.
Triple make_triple(const TextureBank& bank, int k, std::uint64_t seed, const PerlinParams& params = {},
                   int size = kTripleSize);

}  // namespace groundsight::collage
