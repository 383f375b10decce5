#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "groundsight/core/error.hpp"
#include "groundsight/core/random.hpp"
#include "groundsight/mosts/grad_check.hpp"
#include "groundsight/mosts/loss.hpp"

using namespace groundsight;
using namespace groundsight::mosts;

namespace {

// Straight transcription of the loss, used as an oracle.
double oracle_loss(const std::vector<double>& p_in, const std::vector<std::uint8_t>& g, const ComboLossParams& q) {
  const double n = static_cast<double>(p_in.size());
  double bce = 0, inter = 0, sp = 0, sg = 0;
  for (std::size_t i = 0; i < p_in.size(); ++i) {
    const double p = std::min(std::max(p_in[i], q.clamp_eps), 1 - q.clamp_eps);
    bce -= q.beta * g[i] * std::log(p) + (1 - q.beta) * (1 - g[i]) * std::log(1 - p);
    inter += p * g[i];
    sp += p;
    sg += g[i];
  }
  const double dice = (2 * inter + q.smooth) / (sp + sg + q.smooth);
  return q.alpha * bce / n + (1 - q.alpha) * (1 - dice);
}

struct Case {
  Tensor p;
  BinaryMask g;
};

Case random_case(Rng& rng, int side) {
  Case c{Tensor(1, side, side), BinaryMask(side, side)};
  for (auto& v : c.p.data) v = rng.uniform(0.05, 0.95);
  for (auto& v : c.g.data()) v = rng.index(2);
  return c;
}

}  // namespace

TEST(ComboLoss, MatchesOracleValue) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_case(rng, 1 + static_cast<int>(rng.index(10)));
    ComboLossParams q;
    q.alpha = rng.uniform(0, 1);
    q.beta = rng.uniform(0, 1);
    q.smooth = rng.uniform(0.1, 2);
    const auto r = combo_loss(c.p, c.g, q);
    EXPECT_NEAR(r.loss, oracle_loss(c.p.data, c.g.data(), q), 1e-12);
    EXPECT_NEAR(r.loss, q.alpha * r.bce + (1 - q.alpha) * (1 - r.dice), 1e-12);
  }
}

TEST(ComboLoss, ClosedFormAtOneHalf) {
  Tensor p(1, 4, 4, 0.5);
  BinaryMask g(4, 4);
  for (auto& v : g.data()) v = 1;
  const auto r = combo_loss(p, g);
  EXPECT_NEAR(r.bce, 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(r.dice, (2 * 8.0 + 1) / (8.0 + 16.0 + 1), 1e-15);
}

TEST(ComboLoss, PerfectPredictionHasUnitDice) {
  Tensor p(1, 3, 3);
  BinaryMask g(3, 3);
  for (int i = 0; i < 9; i += 2) {
    p.data[static_cast<std::size_t>(i)] = 1.0;
    g.data()[static_cast<std::size_t>(i)] = 1;
  }
  const auto r = combo_loss(p, g);
  EXPECT_NEAR(r.dice, 1.0, 1e-6);
  EXPECT_LT(r.loss, 1e-6);
  // Clamped entries carry zero gradient.
  for (double v : r.grad.data) EXPECT_EQ(v, 0.0);
}

TEST(ComboLoss, GradientMatchesOracleDifferences) {
  Rng rng(2);
  const ComboLossParams q;
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_case(rng, 5);
    const auto r = combo_loss(c.p, c.g, q);
    for (std::size_t i = 0; i < c.p.size(); ++i) {
      auto up = c.p.data;
      auto dn = c.p.data;
      up[i] += 1e-5;
      dn[i] -= 1e-5;
      const double fd = (oracle_loss(up, c.g.data(), q) - oracle_loss(dn, c.g.data(), q)) / 2e-5;
      EXPECT_NEAR(r.grad.data[i], fd, 1e-7 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(ComboLoss, Errors) {
  EXPECT_THROW(combo_loss(Tensor(1, 2, 2), BinaryMask(3, 2)), Error);
  EXPECT_THROW(combo_loss(Tensor(2, 2, 2), BinaryMask(2, 2)), Error);
  ComboLossParams q;
  q.alpha = 1.5;
  EXPECT_THROW(combo_loss(Tensor(1, 2, 2), BinaryMask(2, 2), q), Error);
}

TEST(GradCheck, HundredInstancesWithinTolerance) {
  const auto r = run_grad_check(100, 8, 7);
  EXPECT_EQ(r.instances, 100);
  EXPECT_LE(r.max_relative_error, 1e-4);
  EXPECT_EQ(run_grad_check(10, 8, 7).max_relative_error, run_grad_check(10, 8, 7).max_relative_error);
}
