#pragma once

#include <cstdint>

#include "groundsight/mosts/loss.hpp"

namespace groundsight::mosts {

struct GradCheckResult {
  int instances = 0;
  /// max over instances of |analytic - numeric|_inf / max(|analytic|_inf, |numeric|_inf)
  double max_relative_error = 0.0;
  double max_abs_error = 0.0;
};

/// Central differences with step h on random p in [0.05, 0.95] and random
/// binary g of size x size, instance i seeded with sub_seed(seed, i).
GradCheckResult run_grad_check(int instances, int size, std::uint64_t seed, const ComboLossParams& params = {},
                               double h = 1e-6);

}  // namespace groundsight::mosts
