#include "kernel_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "groundsight/core/random.hpp"

namespace gs_test {

using groundsight::mosts::ConvKind;

Tensor naive_conv(const Tensor& x, const ConvSpec& s) {
  const int k = s.kernel;
  const int pad = k / 2;
  const int oh = (x.height + 2 * pad - k) / s.stride + 1;
  const int ow = (x.width + 2 * pad - k) / s.stride + 1;
  Tensor out(s.out, oh, ow);
  auto px = [&](int c, int y, int xx) {
    if (y < 0 || y >= x.height || xx < 0 || xx >= x.width) return 0.0;
    return x.at(c, y, xx);
  };
  for (int o = 0; o < s.out; ++o) {
    for (int y = 0; y < oh; ++y) {
      for (int xx = 0; xx < ow; ++xx) {
        double acc = 0.0;
        const int first = s.kind == ConvKind::depthwise ? o : 0;
        const int last = s.kind == ConvKind::depthwise ? o + 1 : s.in;
        for (int i = first; i < last; ++i) {
          for (int ky = 0; ky < k; ++ky) {
            for (int kx = 0; kx < k; ++kx) {
              const std::size_t wi = s.kind == ConvKind::depthwise
                                         ? static_cast<std::size_t>((o * k + ky) * k + kx)
                                         : static_cast<std::size_t>(((o * s.in + i) * k + ky) * k + kx);
              acc += s.weights[wi] * px(i, y * s.stride + ky - pad, xx * s.stride + kx - pad);
            }
          }
        }
        acc += s.bias[static_cast<std::size_t>(o)];
        if (s.bn) {
          const auto& b = *s.bn;
          const auto oi = static_cast<std::size_t>(o);
          acc = (acc - b.mean[oi]) / std::sqrt(b.var[oi] + b.eps) * b.scale[oi] + b.shift[oi];
        }
        if (s.relu && acc < 0) acc = 0;
        out.at(o, y, xx) = acc;
      }
    }
  }
  return out;
}

Tensor naive_avg_pool(const Tensor& x) {
  Tensor out(x.channels, 1, 1);
  for (int c = 0; c < x.channels; ++c) {
    double s = 0.0;
    for (int y = 0; y < x.height; ++y) {
      for (int xx = 0; xx < x.width; ++xx) s += x.at(c, y, xx);
    }
    out.at(c, 0, 0) = s / (x.height * x.width);
  }
  return out;
}

Tensor naive_max_pool(const Tensor& x) {
  Tensor out(x.channels, 1, 1);
  for (int c = 0; c < x.channels; ++c) {
    double m = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < x.height; ++y) {
      for (int xx = 0; xx < x.width; ++xx) m = std::max(m, x.at(c, y, xx));
    }
    out.at(c, 0, 0) = m;
  }
  return out;
}

Tensor naive_cosine(const Tensor& r, const Tensor& fq) {
  Tensor out(1, fq.height, fq.width);
  for (int y = 0; y < fq.height; ++y) {
    for (int x = 0; x < fq.width; ++x) {
      double d = 0, nr = 0, nf = 0;
      for (int c = 0; c < fq.channels; ++c) {
        d += r.at(c, 0, 0) * fq.at(c, y, x);
        nr += r.at(c, 0, 0) * r.at(c, 0, 0);
        nf += fq.at(c, y, x) * fq.at(c, y, x);
      }
      out.at(0, y, x) = d / (std::max(std::sqrt(nr), 1e-12) * std::max(std::sqrt(nf), 1e-12));
    }
  }
  return out;
}

Tensor naive_attention(const Tensor& x, const AttentionWeights& w) {
  const int c = w.channels, h = w.hidden;
  auto mlp = [&](const Tensor& d) {
    std::vector<double> hid(static_cast<std::size_t>(h)), o(static_cast<std::size_t>(c));
    for (int j = 0; j < h; ++j) {
      double a = w.b1[static_cast<std::size_t>(j)];
      for (int i = 0; i < c; ++i) a += w.w1[static_cast<std::size_t>(j * c + i)] * d.at(i, 0, 0);
      hid[static_cast<std::size_t>(j)] = a > 0 ? a : 0;
    }
    for (int i = 0; i < c; ++i) {
      double a = w.b2[static_cast<std::size_t>(i)];
      for (int j = 0; j < h; ++j) a += w.w2[static_cast<std::size_t>(i * h + j)] * hid[static_cast<std::size_t>(j)];
      o[static_cast<std::size_t>(i)] = a;
    }
    return o;
  };
  const auto a = mlp(naive_avg_pool(x));
  const auto m = mlp(naive_max_pool(x));
  Tensor out = x;
  for (int i = 0; i < c; ++i) {
    const double g = 1.0 / (1.0 + std::exp(-(a[static_cast<std::size_t>(i)] + m[static_cast<std::size_t>(i)])));
    for (int y = 0; y < x.height; ++y) {
      for (int xx = 0; xx < x.width; ++xx) out.at(i, y, xx) = x.at(i, y, xx) * g;
    }
  }
  return out;
}

Tensor naive_upsample(const Tensor& x, int out_h, int out_w) {
  Tensor out(x.channels, out_h, out_w);
  for (int c = 0; c < x.channels; ++c) {
    for (int y = 0; y < out_h; ++y) {
      const double sy = std::clamp((y + 0.5) * x.height / out_h - 0.5, 0.0, x.height - 1.0);
      const int y0 = static_cast<int>(std::floor(sy));
      const int y1 = std::min(y0 + 1, x.height - 1);
      const double fy = sy - y0;
      for (int xx = 0; xx < out_w; ++xx) {
        const double sx = std::clamp((xx + 0.5) * x.width / out_w - 0.5, 0.0, x.width - 1.0);
        const int x0 = static_cast<int>(std::floor(sx));
        const int x1 = std::min(x0 + 1, x.width - 1);
        const double fx = sx - x0;
        const double top = (1 - fx) * x.at(c, y0, x0) + fx * x.at(c, y0, x1);
        const double bot = (1 - fx) * x.at(c, y1, x0) + fx * x.at(c, y1, x1);
        out.at(c, y, xx) = (1 - fy) * top + fy * bot;
      }
    }
  }
  return out;
}

void randomize(groundsight::Rng& rng, ConvSpec& s) {
  for (auto& v : s.weights) v = rng.uniform(-0.5, 0.5);
  for (auto& v : s.bias) v = rng.uniform(-0.2, 0.2);
  if (s.bn) {
    for (auto& v : s.bn->scale) v = rng.uniform(0.5, 1.5);
    for (auto& v : s.bn->shift) v = rng.uniform(-0.3, 0.3);
    for (auto& v : s.bn->mean) v = rng.uniform(-0.3, 0.3);
    for (auto& v : s.bn->var) v = rng.uniform(0.2, 2.0);
  }
}

Tensor random_tensor(groundsight::Rng& rng, int c, int h, int w) {
  Tensor t(c, h, w);
  for (auto& v : t.data) v = rng.uniform(-1, 1);
  return t;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace gs_test
