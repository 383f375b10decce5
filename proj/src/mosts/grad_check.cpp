#include "groundsight/mosts/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "groundsight/core/error.hpp"
#include "groundsight/core/random.hpp"

namespace groundsight::mosts {

GradCheckResult run_grad_check(int instances, int size, std::uint64_t seed, const ComboLossParams& params, double h) {
  if (instances < 1 || size < 1 || !(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "bad grad-check settings");
  GradCheckResult out;
  out.instances = instances;
  for (int n = 0; n < instances; ++n) {
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(n)));
    Tensor p(1, size, size);
    BinaryMask g(size, size);
    for (auto& v : p.data) v = rng.uniform(0.05, 0.95);
    for (auto& v : g.data()) v = static_cast<std::uint8_t>(rng.index(2));

    const Tensor analytic = combo_loss(p, g, params).grad;
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Tensor plus = p;
      Tensor minus = p;
      plus.data[i] += h;
      minus.data[i] -= h;
      const double numeric = (combo_loss(plus, g, params).loss - combo_loss(minus, g, params).loss) / (2.0 * h);
      diff = std::max(diff, std::abs(analytic.data[i] - numeric));
      scale = std::max({scale, std::abs(analytic.data[i]), std::abs(numeric)});
    }
    out.max_abs_error = std::max(out.max_abs_error, diff);
    out.max_relative_error = std::max(out.max_relative_error, scale > 0.0 ? diff / scale : diff);
  }
  return out;
}

}  // namespace groundsight::mosts
