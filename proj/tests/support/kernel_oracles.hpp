#pragma once

// Loop-by-loop reference versions of the MOSTS kernels.

#include "groundsight/core/random.hpp"
#include "groundsight/mosts/kernels.hpp"

namespace gs_test {

using groundsight::mosts::AttentionWeights;
using groundsight::mosts::ConvSpec;
using groundsight::mosts::Tensor;

Tensor naive_conv(const Tensor& x, const ConvSpec& s);
Tensor naive_avg_pool(const Tensor& x);
Tensor naive_max_pool(const Tensor& x);
Tensor naive_cosine(const Tensor& r, const Tensor& fq);
Tensor naive_attention(const Tensor& x, const AttentionWeights& w);
/// Bilinear with half-pixel centers, clamped at the border.
Tensor naive_upsample(const Tensor& x, int out_h, int out_w);

/// Fill weights, biases and batch-norm statistics from rng.
void randomize(groundsight::Rng& rng, ConvSpec& s);
Tensor random_tensor(groundsight::Rng& rng, int c, int h, int w);

double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace gs_test
