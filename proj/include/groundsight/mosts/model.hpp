#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "groundsight/core/types.hpp"
#include "groundsight/mosts/kernels.hpp"

namespace groundsight::mosts {

struct ToyMostsConfig {
  /// Output widths of the stride-2 encoder stages; all but the last are skips.
  std::vector<int> encoder_channels{8, 16, 32, 64};
  int embedding_channels = 32;
  int decoder_blocks = 3;
  int groups = 4;
  int attention_reduction = 4;
  std::uint64_t seed = 0;
  /// Draw the layers after the similarity map from non-negative ranges, so an
  /// untrained network's output rises with similarity.
  bool monotone_head = true;

  void validate() const;
  /// Input sides must be a multiple of this.
  int total_stride() const { return 1 << encoder_channels.size(); }
};

struct MostsWeights {
  std::vector<ConvSpec> encoder;    // 3x3, stride 2, BN + ReLU
  std::vector<ConvSpec> embedding;  // 1x1, 3x3, 1x1, each BN + ReLU
  std::vector<GroupBranch> groups;
  std::vector<ConvSpec> decoder;    // one 1x1 per block, the last emits the logit

  /// Seeded fan-in uniform weights, zero biases, identity batch norm.
  static MostsWeights init(const ToyMostsConfig& cfg);

  /// Throws WeightShapeMismatch if any layer disagrees with cfg.
  void check(const ToyMostsConfig& cfg) const;

  using ArrayVisitor = std::function<void(const std::string& name, const std::vector<std::int64_t>& shape,
                                          std::vector<double>& values)>;
  /// Every parameter array in a fixed order with a stable name.
  void visit(const ArrayVisitor& fn);
};

struct EncodedImage {
  std::vector<Tensor> skips;  // finest first
  Tensor embedding;
};

/// Shared Siamese trunk: encoder then the embedding bottleneck.
EncodedImage encode(const Tensor& image, const MostsWeights& w);

/// Everything after pooling: similarity, masking, grouping, decoding and the
/// final upsample + sigmoid to out_h x out_w.
Tensor mosts_head(const EncodedImage& query, const Tensor& pooled_reference, const MostsWeights& w, int out_h,
                  int out_w);

/// P = f(Q, R, theta): a 1 x H x W probability map at the query's size. Every
/// image side must be a multiple of cfg.total_stride().
Tensor mosts_forward(const ImageRGB& query, const ImageRGB& reference, const ToyMostsConfig& cfg,
                     const MostsWeights& w);

}  // namespace groundsight::mosts
