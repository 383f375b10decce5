#include "groundsight/mosts/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "groundsight/core/error.hpp"

namespace groundsight::mosts {

Tensor::Tensor(int c, int h, int w, double fill) : channels(c), height(h), width(w) {
  if (c < 0 || h < 0 || w < 0) throw Error(ErrorKind::ShapeMismatch, "negative tensor dimension");
  data.assign(static_cast<std::size_t>(c) * h * w, fill);
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  if (a.height != b.height || a.width != b.width) {
    throw Error(ErrorKind::ShapeMismatch, "concat needs equal spatial size");
  }
  Tensor out(a.channels + b.channels, a.height, a.width);
  std::copy(a.data.begin(), a.data.end(), out.data.begin());
  std::copy(b.data.begin(), b.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return out;
}

Tensor slice_channels(const Tensor& x, int begin, int count) {
  if (begin < 0 || count < 0 || begin + count > x.channels) {
    throw Error(ErrorKind::ShapeMismatch, "channel slice out of range");
  }
  Tensor out(count, x.height, x.width);
  const auto first = x.data.begin() + static_cast<std::ptrdiff_t>(begin * x.plane());
  std::copy(first, first + static_cast<std::ptrdiff_t>(out.size()), out.data.begin());
  return out;
}

Tensor image_to_tensor(const ImageRGB& image) {
  Tensor t(3, image.height(), image.width());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) t.at(c, y, x) = image.at(x, y, c) / 255.0 - 0.5;
    }
  }
  return t;
}

ImageGray8 probability_image(const Tensor& p) {
  if (p.channels != 1) throw Error(ErrorKind::ShapeMismatch, "probability map must have one channel");
  ImageGray8 img(p.width, p.height);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long v = std::lround(std::clamp(p.data[i], 0.0, 1.0) * 255.0);
    img.data()[i] = static_cast<std::uint8_t>(v);
  }
  return img;
}

}  // namespace groundsight::mosts
