#include "groundsight/collage/texture_bank.hpp"

#include <algorithm>
#include <cmath>

#include "groundsight/core/io.hpp"

namespace groundsight::collage {
namespace fs = std::filesystem;

TextureBank TextureBank::load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, dir.string() + ": not a directory");
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());

  TextureBank bank;
  for (const auto& cdir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cdir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".ppm") files.push_back(entry.path());
    }
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    TextureClass tc{cdir.filename().string(), {}};
    for (const auto& f : files) tc.images.push_back(io::read_ppm(f));
    bank.classes.push_back(std::move(tc));
  }
  return bank;
}

std::uint64_t TextureBank::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  auto feed_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) feed(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  for (const auto& c : classes) {
    for (char ch : c.name) feed(static_cast<std::uint8_t>(ch));
    feed(0);
    feed_u32(static_cast<std::uint32_t>(c.images.size()));
    for (const auto& img : c.images) {
      feed_u32(static_cast<std::uint32_t>(img.width()));
      feed_u32(static_cast<std::uint32_t>(img.height()));
      for (auto b : img.data()) feed(b);
    }
  }
  return h;
}

ImageRGB resize_bilinear(const ImageRGB& image, int width, int height) {
  if (width < 1 || height < 1 || image.width() < 1 || image.height() < 1) {
    throw Error(ErrorKind::InvalidArgument, "resize needs non-empty images");
  }
  if (width == image.width() && height == image.height()) return image;

  struct Tap {
    int i0, i1;
    double w;
  };
  auto taps = [](int out, int in) {
    std::vector<Tap> t(static_cast<std::size_t>(out));
    const double scale = static_cast<double>(in) / out;
    for (int d = 0; d < out; ++d) {
      const double s = std::clamp((d + 0.5) * scale - 0.5, 0.0, static_cast<double>(in - 1));
      const int i0 = static_cast<int>(std::floor(s));
      const int i1 = std::min(i0 + 1, in - 1);
      t[static_cast<std::size_t>(d)] = {i0, i1, s - i0};
    }
    return t;
  };
  const auto tx = taps(width, image.width());
  const auto ty = taps(height, image.height());

  ImageRGB out(width, height);
  for (int y = 0; y < height; ++y) {
    const Tap& a = ty[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& b = tx[static_cast<std::size_t>(x)];
      for (int c = 0; c < 3; ++c) {
        const double top = image.at(b.i0, a.i0, c) + b.w * (image.at(b.i1, a.i0, c) - image.at(b.i0, a.i0, c));
        const double bot = image.at(b.i0, a.i1, c) + b.w * (image.at(b.i1, a.i1, c) - image.at(b.i0, a.i1, c));
        const double v = top + a.w * (bot - top);
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

}  // namespace groundsight::collage
