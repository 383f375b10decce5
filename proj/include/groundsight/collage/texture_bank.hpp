#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::collage {

struct TextureClass {
  std::string name;
  std::vector<ImageRGB> images;
};

struct TextureBank {
  std::vector<TextureClass> classes;

  /// Directory of class subdirectories holding .ppm files. Classes and files
  /// are taken in lexicographic order so indices are stable across runs.
  static TextureBank load(const std::filesystem::path& dir);

  /// FNV-1a over class names, image sizes and pixels.
  std::uint64_t fingerprint() const;
};

/// Bilinear resize with half-pixel centers: src = (dst + 0.5) * in / out - 0.5,
/// clamped to the image; results rounded to nearest.
ImageRGB resize_bilinear(const ImageRGB& image, int width, int height);

}  // namespace groundsight::collage
