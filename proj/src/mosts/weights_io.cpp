#include "groundsight/mosts/weights_io.hpp"

#include <bit>
#include <fstream>
#include <map>

#include <json.hpp>

#include "groundsight/core/error.hpp"

namespace groundsight::mosts {
namespace {

constexpr const char* kFormat = "groundsight-weights";
constexpr int kVersion = 1;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::size_t element_count(const std::vector<std::int64_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) {
    if (d < 0) throw Error(ErrorKind::Io, "negative dimension in weight header");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

}  // namespace

void write_arrays(const std::filesystem::path& path, const std::vector<NamedArray>& arrays) {
  nlohmann::json header{{"format", kFormat}, {"version", kVersion}, {"tensors", nlohmann::json::array()}};
  std::string payload;
  for (const auto& a : arrays) {
    if (element_count(a.shape) != a.values.size()) {
      throw Error(ErrorKind::WeightShapeMismatch, a.name + ": shape does not match value count");
    }
    header["tensors"].push_back({{"name", a.name}, {"shape", a.shape}, {"dtype", "f64"}, {"offset", payload.size()}});
    for (double v : a.values) put_u64(payload, std::bit_cast<std::uint64_t>(v));
  }
  const std::string text = header.dump();
  std::string prefix;
  put_u64(prefix, text.size());

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << prefix << text << payload;
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

std::vector<NamedArray> read_arrays(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 8) throw Error(ErrorKind::Io, path.string() + ": truncated weight file");
  const std::uint64_t hlen = get_u64(raw);
  if (hlen > bytes.size() - 8) throw Error(ErrorKind::Io, path.string() + ": header overruns file");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(8, hlen));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": bad weight header: " + e.what());
  }
  if (header.value("format", "") != kFormat || header.value("version", 0) != kVersion) {
    throw Error(ErrorKind::Io, path.string() + ": not a version 1 weight file");
  }
  const std::size_t base = 8 + hlen;
  const std::size_t payload = bytes.size() - base;

  std::vector<NamedArray> arrays;
  try {
    for (const auto& t : header.at("tensors")) {
      NamedArray a{t.at("name").get<std::string>(), t.at("shape").get<std::vector<std::int64_t>>(), {}};
      if (t.at("dtype").get<std::string>() != "f64") throw Error(ErrorKind::Io, a.name + ": unsupported dtype");
      const auto offset = t.at("offset").get<std::size_t>();
      const std::size_t n = element_count(a.shape);
      if (offset > payload || n > (payload - offset) / 8) throw Error(ErrorKind::Io, a.name + ": data overruns file");
      a.values.resize(n);
      for (std::size_t i = 0; i < n; ++i) a.values[i] = std::bit_cast<double>(get_u64(raw + base + offset + 8 * i));
      arrays.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": bad weight header: " + e.what());
  }
  return arrays;
}

std::vector<NamedArray> to_arrays(const MostsWeights& w) {
  std::vector<NamedArray> arrays;
  MostsWeights copy = w;
  copy.visit([&](const std::string& name, const std::vector<std::int64_t>& shape, std::vector<double>& values) {
    arrays.push_back({name, shape, values});
  });
  return arrays;
}

MostsWeights from_arrays(const std::vector<NamedArray>& arrays, const ToyMostsConfig& cfg) {
  std::map<std::string, const NamedArray*> by_name;
  for (const auto& a : arrays) {
    if (!by_name.emplace(a.name, &a).second) throw Error(ErrorKind::WeightShapeMismatch, "duplicate array " + a.name);
  }
  MostsWeights w = MostsWeights::init(cfg);
  std::size_t used = 0;
  w.visit([&](const std::string& name, const std::vector<std::int64_t>& shape, std::vector<double>& values) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(ErrorKind::WeightShapeMismatch, "missing array " + name);
    if (it->second->shape != shape) throw Error(ErrorKind::WeightShapeMismatch, name + ": shape mismatch");
    values = it->second->values;
    ++used;
  });
  if (used != arrays.size()) throw Error(ErrorKind::WeightShapeMismatch, "weight file has arrays the model does not use");
  return w;
}

void save_weights(const std::filesystem::path& path, const MostsWeights& w) { write_arrays(path, to_arrays(w)); }

MostsWeights load_weights(const std::filesystem::path& path, const ToyMostsConfig& cfg) {
  return from_arrays(read_arrays(path), cfg);
}

}  // namespace groundsight::mosts
