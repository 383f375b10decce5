#include "groundsight/core/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <vector>

namespace groundsight::io {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
  throw Error(ErrorKind::Io, path.string() + ": " + why);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

void append_float(std::string& out, float v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

// --- PNM -----------------------------------------------------------------

struct PnmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::size_t data_offset = 0;
};

PnmHeader parse_pnm_header(const std::string& bytes, std::string_view magic,
                           const std::filesystem::path& path) {
  if (bytes.size() < 2 || std::string_view(bytes).substr(0, 2) != magic) {
    fail(path, "expected " + std::string(magic) + " header");
  }
  std::size_t pos = 2;
  auto next_int = [&]() {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    int v = 0;
    const auto res = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), v);
    if (res.ec != std::errc{} || v <= 0) fail(path, "malformed header");
    pos = static_cast<std::size_t>(res.ptr - bytes.data());
    return v;
  };
  PnmHeader h;
  h.width = next_int();
  h.height = next_int();
  h.maxval = next_int();
  if (h.maxval > 65535) fail(path, "maxval out of range");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail(path, "malformed header");
  }
  h.data_offset = pos + 1;
  return h;
}

template <typename Img>
void write_binary(const std::filesystem::path& path, const std::string& header, const Img& img,
                  bool sixteen_bit) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open for writing");
  f << header;
  if (sixteen_bit) {
    std::string buf;
    buf.reserve(img.data().size() * 2);
    for (auto v : img.data()) {
      buf.push_back(static_cast<char>((v >> 8) & 0xFF));
      buf.push_back(static_cast<char>(v & 0xFF));
    }
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  } else {
    f.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  }
  if (!f) fail(path, "write failed");
}

std::string pnm_header(std::string_view magic, int w, int h, int maxval) {
  return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
         std::to_string(maxval) + "\n";
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open");
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) fail(path, "write failed");
}

// --- PLY -------------------------------------------------------------------

PointCloud read_ply(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    line = std::string_view(text).substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    return true;
  };

  struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<std::string> properties;
    std::vector<bool> single;  // float32 storage: round parsed values to float
  };
  std::vector<Element> elements;

  std::string_view line;
  if (!next_line(line) || line != "ply") fail(path, "missing 'ply' magic");
  bool ascii = false;
  bool header_done = false;
  while (next_line(line)) {
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "end_header") {
      header_done = true;
      break;
    }
    if (tok[0] == "format") {
      if (tok.size() < 2) fail(path, "malformed format line");
      ascii = tok[1] == "ascii";
      if (!ascii) fail(path, "only ASCII PLY is supported");
    } else if (tok[0] == "element") {
      if (tok.size() != 3) fail(path, "malformed element line");
      std::size_t count = 0;
      const auto res = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), count);
      if (res.ec != std::errc{}) fail(path, "malformed element count");
      elements.push_back({std::string(tok[1]), count, {}, {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) fail(path, "property before element");
      elements.back().properties.emplace_back(tok.back());
      elements.back().single.push_back(tok.size() == 3 && (tok[1] == "float" || tok[1] == "float32"));
    }
  }
  if (!header_done || !ascii) fail(path, "incomplete header");

  std::vector<Point3> points;
  for (const auto& el : elements) {
    if (el.name != "vertex") {
      for (std::size_t i = 0; i < el.count; ++i) {
        if (!next_line(line)) fail(path, "truncated element '" + el.name + "'");
      }
      continue;
    }
    auto find = [&](std::string_view name) -> std::size_t {
      for (std::size_t i = 0; i < el.properties.size(); ++i) {
        if (el.properties[i] == name) return i;
      }
      fail(path, "vertex element lacks property " + std::string(name));
    };
    const std::size_t ix = find("x"), iy = find("y"), iz = find("z");
    points.reserve(el.count);
    for (std::size_t i = 0; i < el.count; ++i) {
      if (!next_line(line)) fail(path, "truncated vertex list");
      const auto tok = split_ws(line);
      if (tok.size() < el.properties.size()) fail(path, "short vertex line " + std::to_string(i));
      Point3 p;
      if (!parse_double(tok[ix], p.x) || !parse_double(tok[iy], p.y) || !parse_double(tok[iz], p.z)) {
        // "nan"/"inf" tokens parse fine; anything else is malformed
        fail(path, "bad coordinate on vertex " + std::to_string(i));
      }
      if (el.single[ix]) p.x = static_cast<float>(p.x);
      if (el.single[iy]) p.y = static_cast<float>(p.y);
      if (el.single[iz]) p.z = static_cast<float>(p.z);
      points.push_back(p);
    }
    break;
  }
  return sanitized(std::move(points));
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud,
               std::span<const std::uint8_t> labels) {
  if (!labels.empty() && labels.size() != cloud.size()) {
    throw Error(ErrorKind::LengthMismatch, "label count does not match cloud size");
  }
  std::string out;
  out.reserve(64 + cloud.size() * 36);
  out += "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
         "\nproperty float x\nproperty float y\nproperty float z\n";
  if (!labels.empty()) out += "property uchar label\n";
  out += "end_header\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud.points[i];
    append_float(out, static_cast<float>(p.x));
    out += ' ';
    append_float(out, static_cast<float>(p.y));
    out += ' ';
    append_float(out, static_cast<float>(p.z));
    if (!labels.empty()) {
      out += ' ';
      out += std::to_string(labels[i]);
    }
    out += '\n';
  }
  write_text(path, out);
}

PointCloud read_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  std::vector<Point3> points;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.find_first_not_of(" \t") == std::string_view::npos || sv.front() == '#') continue;
    double v[3];
    std::size_t start = 0;
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      const std::size_t comma = sv.find(',', start);
      const bool last = k == 2;
      if (!last && comma == std::string_view::npos) {
        ok = false;
        break;
      }
      const std::string_view field =
          last ? sv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)
               : sv.substr(start, comma - start);
      ok = parse_double(field, v[k]);
      start = comma + 1;
    }
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header
      }
      fail(path, "malformed line " + std::to_string(lineno));
    }
    first = false;
    points.push_back({v[0], v[1], v[2]});
  }
  return sanitized(std::move(points));
}

PointCloud read_cloud(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".ply" || ext == ".PLY") return read_ply(path);
  if (ext == ".csv" || ext == ".CSV") return read_csv(path);
  fail(path, "unknown point cloud extension (expected .ply or .csv)");
}

// --- PGM / PPM ------------------------------------------------------------------

ImageGray8 read_pgm8(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  const PnmHeader h = parse_pnm_header(bytes, "P5", path);
  if (h.maxval > 255) fail(path, "expected an 8-bit PGM");
  ImageGray8 img(h.width, h.height);
  if (bytes.size() - h.data_offset < img.data().size()) fail(path, "truncated pixel data");
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset), img.data().size(),
              reinterpret_cast<char*>(img.data().data()));
  return img;
}

ImageGray16 read_pgm16(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  const PnmHeader h = parse_pnm_header(bytes, "P5", path);
  ImageGray16 img(h.width, h.height);
  const std::size_t n = img.data().size();
  const std::size_t bpp = h.maxval > 255 ? 2 : 1;
  if (bytes.size() - h.data_offset < n * bpp) fail(path, "truncated pixel data");
  const auto* src = reinterpret_cast<const unsigned char*>(bytes.data() + h.data_offset);
  for (std::size_t i = 0; i < n; ++i) {
    img.data()[i] = bpp == 2 ? static_cast<std::uint16_t>((src[2 * i] << 8) | src[2 * i + 1]) : src[i];
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const ImageGray8& image) {
  write_binary(path, pnm_header("P5", image.width(), image.height(), 255), image, false);
}

void write_pgm(const std::filesystem::path& path, const ImageGray16& image) {
  write_binary(path, pnm_header("P5", image.width(), image.height(), 65535), image, true);
}

ImageRGB read_ppm(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  const PnmHeader h = parse_pnm_header(bytes, "P6", path);
  if (h.maxval > 255) fail(path, "only 8-bit PPM is supported");
  ImageRGB img(h.width, h.height);
  if (bytes.size() - h.data_offset < img.data().size()) fail(path, "truncated pixel data");
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset), img.data().size(),
              reinterpret_cast<char*>(img.data().data()));
  return img;
}

void write_ppm(const std::filesystem::path& path, const ImageRGB& image) {
  write_binary(path, pnm_header("P6", image.width(), image.height(), 255), image, false);
}

BinaryMask read_mask(const std::filesystem::path& path) {
  ImageGray8 img = read_pgm8(path);
  for (auto& v : img.data()) v = v != 0 ? 1 : 0;
  return img;
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  ImageGray8 img = mask;
  for (auto& v : img.data()) v = v != 0 ? 255 : 0;
  write_pgm(path, img);
}

}  // namespace groundsight::io
