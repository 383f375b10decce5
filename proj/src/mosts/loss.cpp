#include "groundsight/mosts/loss.hpp"

#include <algorithm>
#include <cmath>

#include "groundsight/core/error.hpp"

namespace groundsight::mosts {

void ComboLossParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
  if (!(smooth > 0.0)) throw Error(ErrorKind::InvalidArgument, "smooth must be > 0");
  if (!(clamp_eps > 0.0 && clamp_eps < 0.5)) throw Error(ErrorKind::InvalidArgument, "clamp_eps must lie in (0, 0.5)");
}

ComboLossResult combo_loss(const Tensor& p, const BinaryMask& g, const ComboLossParams& params) {
  params.validate();
  if (p.channels != 1 || p.height != g.height() || p.width != g.width()) {
    throw Error(ErrorKind::ShapeMismatch, "prediction and mask shapes differ");
  }
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "empty prediction");

  const double lo = params.clamp_eps;
  const double hi = 1.0 - params.clamp_eps;
  std::vector<double> pc(n);
  double bce_sum = 0.0;
  double sum_pg = 0.0;
  double sum_p = 0.0;
  double sum_g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pi = std::min(std::max(p.data[i], lo), hi);
    const double gi = g.data()[i] != 0 ? 1.0 : 0.0;
    pc[i] = pi;
    bce_sum += params.beta * gi * std::log(pi) + (1.0 - params.beta) * (1.0 - gi) * std::log(1.0 - pi);
    sum_pg += pi * gi;
    sum_p += pi;
    sum_g += gi;
  }
  const double nd = static_cast<double>(n);
  const double denom = sum_p + sum_g + params.smooth;
  const double numer = 2.0 * sum_pg + params.smooth;

  ComboLossResult r;
  r.bce = -bce_sum / nd;
  r.dice = numer / denom;
  r.loss = params.alpha * r.bce + (1.0 - params.alpha) * (1.0 - r.dice);

  r.grad = Tensor(1, p.height, p.width);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.data[i] < lo || p.data[i] > hi) continue;
    const double gi = g.data()[i] != 0 ? 1.0 : 0.0;
    const double dbce = -(params.beta * gi / pc[i] - (1.0 - params.beta) * (1.0 - gi) / (1.0 - pc[i])) / nd;
    const double ddice = (2.0 * gi * denom - numer) / (denom * denom);
    r.grad.data[i] = params.alpha * dbce - (1.0 - params.alpha) * ddice;
  }
  return r;
}

}  // namespace groundsight::mosts
