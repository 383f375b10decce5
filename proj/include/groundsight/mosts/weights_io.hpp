#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "groundsight/mosts/model.hpp"

namespace groundsight::mosts {

struct NamedArray {
  std::string name;
  std::vector<std::int64_t> shape;
  std::vector<double> values;
};

/// File layout: u64 little-endian header length, a JSON header
/// {"format", "version", "tensors": [{name, shape, dtype: "f64", offset}]},
/// then the little-endian f64 payload; offsets are bytes into the payload.
void write_arrays(const std::filesystem::path& path, const std::vector<NamedArray>& arrays);
std::vector<NamedArray> read_arrays(const std::filesystem::path& path);

std::vector<NamedArray> to_arrays(const MostsWeights& w);
/// Fills a layout for cfg by name; throws WeightShapeMismatch on a missing,
/// extra or reshaped array.
MostsWeights from_arrays(const std::vector<NamedArray>& arrays, const ToyMostsConfig& cfg);

void save_weights(const std::filesystem::path& path, const MostsWeights& w);
MostsWeights load_weights(const std::filesystem::path& path, const ToyMostsConfig& cfg);

}  // namespace groundsight::mosts
