#pragma once

#include "groundsight/core/types.hpp"
#include "groundsight/mosts/tensor.hpp"

namespace groundsight::mosts {

struct ComboLossParams {
  double alpha = 0.5;      // weight of the balanced BCE term
  double beta = 0.5;       // positive-class weight inside the BCE
  double smooth = 1.0;     // Dice smoothing
  double clamp_eps = 1e-7;

  void validate() const;
};

struct ComboLossResult {
  double loss = 0.0;
  double bce = 0.0;
  double dice = 0.0;
  Tensor grad;  // dL/dp, zero where the clamp is active
};

/// L = alpha * BCE_bal + (1 - alpha) * (1 - Dice), with p clamped into
/// [clamp_eps, 1 - clamp_eps].
/// BCE_bal = -mean(beta g log p + (1 - beta)(1 - g) log(1 - p)),
/// Dice = (2 sum(p g) + smooth) / (sum p + sum g + smooth).
ComboLossResult combo_loss(const Tensor& p, const BinaryMask& g, const ComboLossParams& params = {});

}  // namespace groundsight::mosts
