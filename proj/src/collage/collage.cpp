#include "groundsight/collage/collage.hpp"

#include <numeric>
#include <string>

#include "groundsight/core/error.hpp"
#include "groundsight/core/random.hpp"

namespace groundsight::collage {

std::vector<std::uint8_t> partition_labels(int k, int width, int height, const PerlinParams& params,
                                           std::uint64_t seed) {
  if (k < 1 || k > kMaxClasses) throw Error(ErrorKind::InvalidArgument, "k must lie in [1, 5]");
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidArgument, "partition size must be >= 1");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> labels(n, 0);
  if (k == 1) return labels;

  std::vector<double> best = perlin_field(width, height, params, sub_seed(seed, 0)).values;
  for (int c = 1; c < k; ++c) {
    const auto f = perlin_field(width, height, params, sub_seed(seed, static_cast<std::uint64_t>(c)));
    for (std::size_t i = 0; i < n; ++i) {
      if (f.values[i] > best[i]) {
        best[i] = f.values[i];
        labels[i] = static_cast<std::uint8_t>(c);
      }
    }
  }
  return labels;
}

std::vector<BinaryMask> partition_masks(int k, int width, int height, const PerlinParams& params,
                                        std::uint64_t seed) {
  const auto labels = partition_labels(k, width, height, params, seed);
  std::vector<BinaryMask> masks(static_cast<std::size_t>(k), BinaryMask(width, height));
  for (std::size_t i = 0; i < labels.size(); ++i) masks[labels[i]].data()[i] = 1;
  return masks;
}

ImageRGB compose_collage(const std::vector<ImageRGB>& textures, const std::vector<BinaryMask>& masks) {
  if (textures.empty() || textures.size() != masks.size()) {
    throw Error(ErrorKind::DimensionMismatch, "need one mask per texture");
  }
  const int w = textures[0].width();
  const int h = textures[0].height();
  for (std::size_t i = 0; i < textures.size(); ++i) {
    if (textures[i].width() != w || textures[i].height() != h || masks[i].width() != w ||
        masks[i].height() != h) {
      throw Error(ErrorKind::DimensionMismatch, "textures and masks must share one size");
    }
  }

  ImageRGB out(w, h);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  for (std::size_t p = 0; p < n; ++p) {
    int owner = -1;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const auto m = masks[i].data()[p];
      if (m > 1) throw Error(ErrorKind::PartitionViolation, "mask values must be 0 or 1");
      if (m == 0) continue;
      if (owner >= 0) throw Error(ErrorKind::PartitionViolation, "masks overlap at pixel " + std::to_string(p));
      owner = static_cast<int>(i);
    }
    if (owner < 0) throw Error(ErrorKind::PartitionViolation, "masks leave pixel " + std::to_string(p) + " uncovered");
    for (int c = 0; c < 3; ++c) out.data()[3 * p + c] = textures[static_cast<std::size_t>(owner)].data()[3 * p + c];
  }
  return out;
}

int count_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> stack;
  int count = 0;
  for (int start = 0; start < w * h; ++start) {
    if (mask.data()[static_cast<std::size_t>(start)] == 0 || seen[static_cast<std::size_t>(start)]) continue;
    ++count;
    seen[static_cast<std::size_t>(start)] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      const int x = p % w;
      const int y = p / w;
      auto push = [&](int q) {
        const auto qi = static_cast<std::size_t>(q);
        if (mask.data()[qi] != 0 && !seen[qi]) {
          seen[qi] = 1;
          stack.push_back(q);
        }
      };
      if (x > 0) push(p - 1);
      if (x + 1 < w) push(p + 1);
      if (y > 0) push(p - w);
      if (y + 1 < h) push(p + w);
    }
  }
  return count;
}

Triple make_triple(const TextureBank& bank, int k, std::uint64_t seed, const PerlinParams& params, int size) {
  if (k < 1 || k > kMaxClasses) throw Error(ErrorKind::InvalidArgument, "k must lie in [1, 5]");
  std::vector<int> eligible;
  for (std::size_t c = 0; c < bank.classes.size(); ++c) {
    if (!bank.classes[c].images.empty()) eligible.push_back(static_cast<int>(c));
  }
  if (eligible.size() < static_cast<std::size_t>(k)) {
    throw Error(ErrorKind::InsufficientBank, "bank has " + std::to_string(eligible.size()) +
                                                 " usable classes, need " + std::to_string(k));
  }

  Rng rng(seed);
  Triple t;
  t.seed = seed;
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.index(eligible.size() - static_cast<std::size_t>(i));
    std::swap(eligible[static_cast<std::size_t>(i)], eligible[j]);
    t.classes.push_back(eligible[static_cast<std::size_t>(i)]);
  }
  for (int c : t.classes) {
    t.sources.push_back(static_cast<int>(rng.index(bank.classes[static_cast<std::size_t>(c)].images.size())));
  }
  t.target_class_index = static_cast<int>(rng.index(static_cast<std::uint64_t>(k)));

  const auto& target = bank.classes[static_cast<std::size_t>(t.classes[static_cast<std::size_t>(t.target_class_index)])];
  const int src = t.sources[static_cast<std::size_t>(t.target_class_index)];
  const auto m = target.images.size();
  if (m == 1) {
    t.reference_source = 0;
  } else {
    const int r = static_cast<int>(rng.index(m - 1));
    t.reference_source = r < src ? r : r + 1;
  }
  const std::uint64_t mask_seed = rng.next();

  std::vector<ImageRGB> textures;
  textures.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto& cls = bank.classes[static_cast<std::size_t>(t.classes[static_cast<std::size_t>(i)])];
    textures.push_back(resize_bilinear(cls.images[static_cast<std::size_t>(t.sources[static_cast<std::size_t>(i)])], size, size));
  }
  auto masks = partition_masks(k, size, size, params, mask_seed);
  t.query = compose_collage(textures, masks);
  t.reference = resize_bilinear(target.images[static_cast<std::size_t>(t.reference_source)], size, size);
  t.truth = std::move(masks[static_cast<std::size_t>(t.target_class_index)]);
  return t;
}

}  // namespace groundsight::collage
