#pragma once

#include <optional>
#include <vector>

#include "groundsight/mosts/tensor.hpp"

namespace groundsight::mosts {

enum class ConvKind { standard, depthwise, pointwise };

/// Inference-form batch norm: (x - mean) / sqrt(var + eps) * scale + shift.
struct BatchNorm {
  std::vector<double> scale, shift, mean, var;
  double eps = 1e-5;

  static BatchNorm identity(int channels);
};

/// Same-padded convolution. Weight layout: standard [out][in][k][k],
/// depthwise [channels][k][k], pointwise [out][in].
struct ConvSpec {
  ConvKind kind = ConvKind::standard;
  int kernel = 3;
  int in = 0;
  int out = 0;
  int stride = 1;
  std::vector<double> weights;
  std::vector<double> bias;
  std::optional<BatchNorm> bn;
  bool relu = false;

  std::size_t weight_count() const;
  /// Throws WeightShapeMismatch.
  void validate() const;
};

ConvSpec make_conv(ConvKind kind, int kernel, int in, int out, int stride = 1, bool bn = false, bool relu = false);

Tensor conv_forward(const Tensor& x, const ConvSpec& spec);

Tensor global_avg_pool(const Tensor& x);
Tensor global_max_pool(const Tensor& x);

/// s = r . f / (max(|r|, eps) * max(|f|, eps)) at every position of fq.
Tensor cosine_similarity_map(const Tensor& r, const Tensor& fq, double eps = 1e-12);

Tensor similarity_mask(const Tensor& fq, const Tensor& s);

/// Shared two-layer MLP: w1 [hidden][channels], w2 [channels][hidden].
struct AttentionWeights {
  int channels = 0;
  int hidden = 0;
  std::vector<double> w1, b1, w2, b2;

  static AttentionWeights zeros(int channels, int hidden);
  void validate() const;
};

/// CBAM channel attention: x * sigmoid(mlp(avg(x)) + mlp(max(x))).
Tensor channel_attention(const Tensor& x, const AttentionWeights& w);

struct GroupBranch {
  ConvSpec dw;  // depthwise over the 2 * C / groups concatenated channels
  ConvSpec pw;  // pointwise 2 * C / groups -> C
  AttentionWeights attention;
};

/// Split both inputs into groups.size() contiguous channel groups, run each
/// [masked_g, raw_g] through its branch and sum the branch outputs.
Tensor local_grouping(const Tensor& masked, const Tensor& raw, const std::vector<GroupBranch>& groups);

/// Half-pixel centers: src = (dst + 0.5) * in / out - 0.5, clamped.
Tensor bilinear_upsample(const Tensor& x, int out_h, int out_w);

double sigmoid(double v);
Tensor sigmoid(const Tensor& x);

}  // namespace groundsight::mosts
