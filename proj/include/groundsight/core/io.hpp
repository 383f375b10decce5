#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "groundsight/core/types.hpp"

namespace groundsight::io {

// All readers throw Error(ErrorKind::Io) on missing files or malformed content.

/// ASCII PLY with a vertex element carrying x, y, z (float or double). Other
/// vertex properties and later elements are ignored; non-finite points are dropped.
PointCloud read_ply(const std::filesystem::path& path);

/// ASCII PLY, `property float x/y/z`; when `labels` is non-empty it must match
/// the cloud length and is written as an extra `uchar label` property.
void write_ply(const std::filesystem::path& path, const PointCloud& cloud,
               std::span<const std::uint8_t> labels = {});

/// One "x,y,z" triple per line. Blank lines, '#' comments and a non-numeric
/// header line are skipped.
PointCloud read_csv(const std::filesystem::path& path);

/// Dispatches on extension (.ply or .csv).
PointCloud read_cloud(const std::filesystem::path& path);

/// Binary PGM (P5). 8-bit when maxval <= 255; 16-bit big-endian otherwise.
ImageGray8 read_pgm8(const std::filesystem::path& path);
ImageGray16 read_pgm16(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ImageGray8& image);
void write_pgm(const std::filesystem::path& path, const ImageGray16& image);

/// Binary PPM (P6), maxval 255.
ImageRGB read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const ImageRGB& image);

/// Reads an 8-bit PGM as a {0,1} mask: any non-zero pixel becomes 1.
BinaryMask read_mask(const std::filesystem::path& path);
/// Writes a {0,1} mask as an 8-bit PGM with values 0/255.
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace groundsight::io
