#include "groundsight/mosts/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "groundsight/core/error.hpp"

namespace groundsight::mosts {
namespace {

void require(bool ok, ErrorKind kind, const char* what) {
  if (!ok) throw Error(kind, what);
}

// Valid output range [lo, hi) along one axis for kernel tap `k`.
void tap_range(int k, int pad, int stride, int in, int out, int& lo, int& hi) {
  const int offset = k - pad;
  lo = offset >= 0 ? 0 : (-offset + stride - 1) / stride;
  hi = std::min(out, in - offset <= 0 ? 0 : (in - offset - 1) / stride + 1);
  if (hi < lo) hi = lo;
}

void apply_bn_relu(Tensor& y, const ConvSpec& spec) {
  const std::size_t plane = y.plane();
  for (int c = 0; c < y.channels; ++c) {
    double* p = y.data.data() + c * plane;
    if (spec.bn) {
      const BatchNorm& bn = *spec.bn;
      const double inv = bn.scale[static_cast<std::size_t>(c)] / std::sqrt(bn.var[static_cast<std::size_t>(c)] + bn.eps);
      const double mean = bn.mean[static_cast<std::size_t>(c)];
      const double shift = bn.shift[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < plane; ++i) p[i] = (p[i] - mean) * inv + shift;
    }
    if (spec.relu) {
      for (std::size_t i = 0; i < plane; ++i) p[i] = std::max(p[i], 0.0);
    }
  }
}

}  // namespace

BatchNorm BatchNorm::identity(int channels) {
  const auto n = static_cast<std::size_t>(channels);
  return {std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
          std::vector<double>(n, 1.0), 1e-5};
}

std::size_t ConvSpec::weight_count() const {
  const auto k2 = static_cast<std::size_t>(kernel) * kernel;
  switch (kind) {
    case ConvKind::depthwise:
      return static_cast<std::size_t>(out) * k2;
    case ConvKind::pointwise:
      return static_cast<std::size_t>(out) * in;
    case ConvKind::standard:
      break;
  }
  return static_cast<std::size_t>(out) * in * k2;
}

void ConvSpec::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::WeightShapeMismatch, m); };
  if (in < 1 || out < 1 || stride < 1) fail("conv channels and stride must be >= 1");
  if (kernel != 1 && kernel != 3) fail("conv kernel must be 1 or 3");
  if (kind == ConvKind::pointwise && kernel != 1) fail("pointwise conv needs kernel 1");
  if (kind == ConvKind::depthwise && in != out) fail("depthwise conv needs in == out");
  if (weights.size() != weight_count()) fail("conv weight count " + std::to_string(weights.size()) +
                                             ", expected " + std::to_string(weight_count()));
  if (bias.size() != static_cast<std::size_t>(out)) fail("conv bias count mismatch");
  if (bn) {
    const auto n = static_cast<std::size_t>(out);
    if (bn->scale.size() != n || bn->shift.size() != n || bn->mean.size() != n || bn->var.size() != n) {
      fail("batch-norm parameter count mismatch");
    }
  }
}

ConvSpec make_conv(ConvKind kind, int kernel, int in, int out, int stride, bool bn, bool relu) {
  ConvSpec s;
  s.kind = kind;
  s.kernel = kernel;
  s.in = in;
  s.out = out;
  s.stride = stride;
  s.weights.assign(s.weight_count(), 0.0);
  s.bias.assign(static_cast<std::size_t>(out), 0.0);
  if (bn) s.bn = BatchNorm::identity(out);
  s.relu = relu;
  return s;
}

Tensor conv_forward(const Tensor& x, const ConvSpec& spec) {
  spec.validate();
  require(x.channels == spec.in, ErrorKind::ShapeMismatch, "conv input channel mismatch");
  require(x.height >= 1 && x.width >= 1, ErrorKind::ShapeMismatch, "conv input is empty");

  const int k = spec.kernel;
  const int pad = k / 2;
  const int s = spec.stride;
  const int oh = (x.height + 2 * pad - k) / s + 1;
  const int ow = (x.width + 2 * pad - k) / s + 1;
  Tensor y(spec.out, oh, ow);
  const std::size_t oplane = y.plane();
  for (int o = 0; o < spec.out; ++o) {
    std::fill_n(y.data.begin() + static_cast<std::ptrdiff_t>(o * oplane), oplane, spec.bias[static_cast<std::size_t>(o)]);
  }

  // Accumulate tap by tap; each output pixel sums in (input channel, ky, kx) order.
  auto accumulate = [&](int o, int i, const double* w) {
    double* dst = y.data.data() + o * oplane;
    const double* src = x.data.data() + i * x.plane();
    for (int ky = 0; ky < k; ++ky) {
      int y0, y1;
      tap_range(ky, pad, s, x.height, oh, y0, y1);
      for (int kx = 0; kx < k; ++kx) {
        int x0, x1;
        tap_range(kx, pad, s, x.width, ow, x0, x1);
        const double wv = w[ky * k + kx];
        for (int yy = y0; yy < y1; ++yy) {
          const double* row = src + static_cast<std::size_t>(yy * s + ky - pad) * x.width;
          double* out = dst + static_cast<std::size_t>(yy) * ow;
          for (int xx = x0; xx < x1; ++xx) out[xx] += wv * row[xx * s + kx - pad];
        }
      }
    }
  };

  const auto k2 = static_cast<std::size_t>(k) * k;
  switch (spec.kind) {
    case ConvKind::depthwise:
      for (int c = 0; c < spec.out; ++c) accumulate(c, c, spec.weights.data() + c * k2);
      break;
    case ConvKind::pointwise:
    case ConvKind::standard:
      for (int o = 0; o < spec.out; ++o) {
        for (int i = 0; i < spec.in; ++i) {
          accumulate(o, i, spec.weights.data() + (static_cast<std::size_t>(o) * spec.in + i) * k2);
        }
      }
      break;
  }
  apply_bn_relu(y, spec);
  return y;
}

Tensor global_avg_pool(const Tensor& x) {
  require(x.plane() > 0, ErrorKind::ShapeMismatch, "pooling an empty tensor");
  Tensor out(x.channels, 1, 1);
  const std::size_t plane = x.plane();
  for (int c = 0; c < x.channels; ++c) {
    double sum = 0.0;
    const double* p = x.data.data() + c * plane;
    for (std::size_t i = 0; i < plane; ++i) sum += p[i];
    out.data[static_cast<std::size_t>(c)] = sum / static_cast<double>(plane);
  }
  return out;
}

Tensor global_max_pool(const Tensor& x) {
  require(x.plane() > 0, ErrorKind::ShapeMismatch, "pooling an empty tensor");
  Tensor out(x.channels, 1, 1);
  const std::size_t plane = x.plane();
  for (int c = 0; c < x.channels; ++c) {
    const double* p = x.data.data() + c * plane;
    out.data[static_cast<std::size_t>(c)] = *std::max_element(p, p + plane);
  }
  return out;
}

Tensor cosine_similarity_map(const Tensor& r, const Tensor& fq, double eps) {
  require(r.height == 1 && r.width == 1, ErrorKind::ShapeMismatch, "reference must be C x 1 x 1");
  require(r.channels == fq.channels, ErrorKind::ShapeMismatch, "cosine channel mismatch");
  double rr = 0.0;
  for (double v : r.data) rr += v * v;
  const double rnorm = std::max(std::sqrt(rr), eps);

  Tensor s(1, fq.height, fq.width);
  const std::size_t plane = fq.plane();
  for (std::size_t p = 0; p < plane; ++p) {
    double dot = 0.0;
    double ff = 0.0;
    for (int c = 0; c < fq.channels; ++c) {
      const double f = fq.data[c * plane + p];
      dot += r.data[static_cast<std::size_t>(c)] * f;
      ff += f * f;
    }
    s.data[p] = dot / (rnorm * std::max(std::sqrt(ff), eps));
  }
  return s;
}

Tensor similarity_mask(const Tensor& fq, const Tensor& s) {
  require(s.channels == 1 && s.height == fq.height && s.width == fq.width, ErrorKind::ShapeMismatch,
          "similarity map must be 1 x H x W of the query");
  Tensor out = fq;
  const std::size_t plane = fq.plane();
  for (int c = 0; c < fq.channels; ++c) {
    for (std::size_t p = 0; p < plane; ++p) out.data[c * plane + p] *= s.data[p];
  }
  return out;
}

AttentionWeights AttentionWeights::zeros(int channels, int hidden) {
  const auto c = static_cast<std::size_t>(channels);
  const auto h = static_cast<std::size_t>(hidden);
  return {channels, hidden, std::vector<double>(h * c, 0.0), std::vector<double>(h, 0.0),
          std::vector<double>(c * h, 0.0), std::vector<double>(c, 0.0)};
}

void AttentionWeights::validate() const {
  const auto c = static_cast<std::size_t>(channels);
  const auto h = static_cast<std::size_t>(hidden);
  if (channels < 1 || hidden < 1 || w1.size() != h * c || b1.size() != h || w2.size() != c * h || b2.size() != c) {
    throw Error(ErrorKind::WeightShapeMismatch, "attention MLP shape mismatch");
  }
}

Tensor channel_attention(const Tensor& x, const AttentionWeights& w) {
  w.validate();
  require(x.channels == w.channels, ErrorKind::ShapeMismatch, "attention channel mismatch");
  const auto c = static_cast<std::size_t>(w.channels);
  const auto h = static_cast<std::size_t>(w.hidden);

  auto mlp = [&](const Tensor& d) {
    std::vector<double> hid(h);
    for (std::size_t j = 0; j < h; ++j) {
      double a = w.b1[j];
      for (std::size_t i = 0; i < c; ++i) a += w.w1[j * c + i] * d.data[i];
      hid[j] = std::max(a, 0.0);
    }
    std::vector<double> o(c);
    for (std::size_t i = 0; i < c; ++i) {
      double a = w.b2[i];
      for (std::size_t j = 0; j < h; ++j) a += w.w2[i * h + j] * hid[j];
      o[i] = a;
    }
    return o;
  };
  const auto a = mlp(global_avg_pool(x));
  const auto m = mlp(global_max_pool(x));

  Tensor out = x;
  const std::size_t plane = x.plane();
  for (std::size_t i = 0; i < c; ++i) {
    const double g = sigmoid(a[i] + m[i]);
    for (std::size_t p = 0; p < plane; ++p) out.data[i * plane + p] *= g;
  }
  return out;
}

Tensor local_grouping(const Tensor& masked, const Tensor& raw, const std::vector<GroupBranch>& groups) {
  require(masked.same_shape(raw), ErrorKind::ShapeMismatch, "masked and raw embeddings differ in shape");
  require(!groups.empty(), ErrorKind::GroupDivisibility, "need at least one group");
  const int g = static_cast<int>(groups.size());
  if (masked.channels % g != 0) {
    throw Error(ErrorKind::GroupDivisibility,
                std::to_string(masked.channels) + " channels do not split into " + std::to_string(g) + " groups");
  }
  const int width = masked.channels / g;

  Tensor sum;
  for (int i = 0; i < g; ++i) {
    const auto& branch = groups[static_cast<std::size_t>(i)];
    Tensor cat = concat_channels(slice_channels(masked, i * width, width), slice_channels(raw, i * width, width));
    Tensor y = channel_attention(conv_forward(conv_forward(cat, branch.dw), branch.pw), branch.attention);
    if (i == 0) {
      sum = std::move(y);
    } else {
      require(y.same_shape(sum), ErrorKind::ShapeMismatch, "group outputs differ in shape");
      for (std::size_t j = 0; j < sum.size(); ++j) sum.data[j] += y.data[j];
    }
  }
  return sum;
}

Tensor bilinear_upsample(const Tensor& x, int out_h, int out_w) {
  require(x.height >= 1 && x.width >= 1, ErrorKind::ShapeMismatch, "upsampling an empty tensor");
  require(out_h >= x.height && out_w >= x.width, ErrorKind::ShapeMismatch, "upsample cannot shrink");
  if (out_h == x.height && out_w == x.width) return x;

  struct Tap {
    int i0, i1;
    double w;
  };
  auto taps = [](int out, int in) {
    std::vector<Tap> t(static_cast<std::size_t>(out));
    const double scale = static_cast<double>(in) / out;
    for (int d = 0; d < out; ++d) {
      const double s = std::clamp((d + 0.5) * scale - 0.5, 0.0, static_cast<double>(in - 1));
      const int i0 = static_cast<int>(s);
      t[static_cast<std::size_t>(d)] = {i0, std::min(i0 + 1, in - 1), s - i0};
    }
    return t;
  };
  const auto ty = taps(out_h, x.height);
  const auto tx = taps(out_w, x.width);

  Tensor out(x.channels, out_h, out_w);
  for (int c = 0; c < x.channels; ++c) {
    for (int yy = 0; yy < out_h; ++yy) {
      const Tap& a = ty[static_cast<std::size_t>(yy)];
      for (int xx = 0; xx < out_w; ++xx) {
        const Tap& b = tx[static_cast<std::size_t>(xx)];
        const double top = x.at(c, a.i0, b.i0) + b.w * (x.at(c, a.i0, b.i1) - x.at(c, a.i0, b.i0));
        const double bot = x.at(c, a.i1, b.i0) + b.w * (x.at(c, a.i1, b.i1) - x.at(c, a.i1, b.i0));
        out.at(c, yy, xx) = top + a.w * (bot - top);
      }
    }
  }
  return out;
}

double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.data) v = sigmoid(v);
  return out;
}

}  // namespace groundsight::mosts
