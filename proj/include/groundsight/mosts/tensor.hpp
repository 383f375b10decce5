#pragma once

#include <cstddef>
#include <vector>

#include "groundsight/core/types.hpp"

namespace groundsight::mosts {

/// Dense C x H x W tensor in double precision, channel-major.
struct Tensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int c, int h, int w, double fill = 0.0);

  std::size_t size() const { return data.size(); }
  std::size_t plane() const { return static_cast<std::size_t>(height) * width; }

  double& at(int c, int y, int x) { return data[(c * plane()) + static_cast<std::size_t>(y) * width + x]; }
  double at(int c, int y, int x) const { return data[(c * plane()) + static_cast<std::size_t>(y) * width + x]; }

  bool same_shape(const Tensor& o) const {
    return channels == o.channels && height == o.height && width == o.width;
  }
  bool operator==(const Tensor&) const = default;
};

Tensor concat_channels(const Tensor& a, const Tensor& b);
Tensor slice_channels(const Tensor& x, int begin, int count);

/// RGB bytes to a 3-channel tensor, v / 255 - 0.5.
Tensor image_to_tensor(const ImageRGB& image);
/// Single-channel probabilities to 8-bit gray, round(p * 255).
ImageGray8 probability_image(const Tensor& p);

}  // namespace groundsight::mosts
