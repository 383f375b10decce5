#include "groundsight/mosts/model.hpp"

#include <cmath>

#include "groundsight/core/error.hpp"
#include "groundsight/core/random.hpp"

namespace groundsight::mosts {
namespace {

struct Layout {
  std::vector<ConvSpec> encoder, embedding, decoder;
  std::vector<GroupBranch> groups;
};

// Shapes and flags of every layer, all parameters zero.
Layout layout(const ToyMostsConfig& cfg) {
  Layout l;
  int prev = 3;
  for (int c : cfg.encoder_channels) {
    l.encoder.push_back(make_conv(ConvKind::standard, 3, prev, c, 2, true, true));
    prev = c;
  }
  const int e = cfg.embedding_channels;
  l.embedding.push_back(make_conv(ConvKind::pointwise, 1, prev, e, 1, true, true));
  l.embedding.push_back(make_conv(ConvKind::standard, 3, e, e, 1, true, true));
  l.embedding.push_back(make_conv(ConvKind::pointwise, 1, e, e, 1, true, true));

  const int cat = 2 * (e / cfg.groups);
  const int hidden = std::max(1, e / cfg.attention_reduction);
  for (int g = 0; g < cfg.groups; ++g) {
    l.groups.push_back({make_conv(ConvKind::depthwise, 3, cat, cat), make_conv(ConvKind::pointwise, 1, cat, e, 1, true, true),
                        AttentionWeights::zeros(e, hidden)});
  }

  prev = e;
  const auto skips = static_cast<int>(cfg.encoder_channels.size()) - 1;
  for (int b = 0; b < cfg.decoder_blocks; ++b) {
    const int skip = cfg.encoder_channels[static_cast<std::size_t>(skips - 1 - b)];
    const bool last = b + 1 == cfg.decoder_blocks;
    l.decoder.push_back(make_conv(ConvKind::pointwise, 1, prev + skip, last ? 1 : skip, 1, !last, !last));
    prev = skip;
  }
  return l;
}

std::vector<std::int64_t> weight_shape(const ConvSpec& s) {
  switch (s.kind) {
    case ConvKind::depthwise:
      return {s.out, 1, s.kernel, s.kernel};
    case ConvKind::pointwise:
      return {s.out, s.in, 1, 1};
    case ConvKind::standard:
      break;
  }
  return {s.out, s.in, s.kernel, s.kernel};
}

int fan_in(const ConvSpec& s) {
  return (s.kind == ConvKind::depthwise ? 1 : s.in) * s.kernel * s.kernel;
}

void visit_conv(const std::string& name, ConvSpec& s, const MostsWeights::ArrayVisitor& fn) {
  fn(name + ".weight", weight_shape(s), s.weights);
  fn(name + ".bias", {s.out}, s.bias);
  if (s.bn) {
    fn(name + ".bn.scale", {s.out}, s.bn->scale);
    fn(name + ".bn.shift", {s.out}, s.bn->shift);
    fn(name + ".bn.mean", {s.out}, s.bn->mean);
    fn(name + ".bn.var", {s.out}, s.bn->var);
  }
}

bool same_layer(const ConvSpec& a, const ConvSpec& b) {
  return a.kind == b.kind && a.kernel == b.kernel && a.in == b.in && a.out == b.out && a.stride == b.stride &&
         a.relu == b.relu && a.bn.has_value() == b.bn.has_value();
}

}  // namespace

void ToyMostsConfig::validate() const {
  auto fail = [](const char* m) { throw Error(ErrorKind::InvalidArgument, m); };
  if (encoder_channels.size() < 2) fail("encoder needs at least two stages");
  for (int c : encoder_channels) {
    if (c < 1) fail("encoder widths must be >= 1");
  }
  if (decoder_blocks != static_cast<int>(encoder_channels.size()) - 1) fail("need one decoder block per skip");
  if (embedding_channels < 1 || groups < 1 || attention_reduction < 1) fail("widths must be >= 1");
  if (embedding_channels % groups != 0) {
    throw Error(ErrorKind::GroupDivisibility, "embedding width must divide into the group count");
  }
}

MostsWeights MostsWeights::init(const ToyMostsConfig& cfg) {
  cfg.validate();
  Layout l = layout(cfg);
  Rng rng(cfg.seed);

  auto trunk = [&rng](ConvSpec& s) {
    const double b = std::sqrt(6.0 / fan_in(s));
    for (double& v : s.weights) v = rng.uniform(-b, b);
  };
  auto head = [&](std::vector<double>& w, int fan) {
    if (cfg.monotone_head) {
      const double b = 2.0 / fan;
      for (double& v : w) v = rng.uniform(0.0, b);
    } else {
      const double b = std::sqrt(6.0 / fan);
      for (double& v : w) v = rng.uniform(-b, b);
    }
  };

  for (auto& s : l.encoder) trunk(s);
  for (auto& s : l.embedding) trunk(s);
  for (auto& g : l.groups) {
    head(g.dw.weights, fan_in(g.dw));
    head(g.pw.weights, fan_in(g.pw));
    head(g.attention.w1, g.attention.channels);
    head(g.attention.w2, g.attention.hidden);
  }
  for (auto& s : l.decoder) head(s.weights, fan_in(s));

  return {std::move(l.encoder), std::move(l.embedding), std::move(l.groups), std::move(l.decoder)};
}

void MostsWeights::check(const ToyMostsConfig& cfg) const {
  cfg.validate();
  const Layout l = layout(cfg);
  auto fail = [](const std::string& m) { throw Error(ErrorKind::WeightShapeMismatch, m); };
  auto layers = [&](const std::vector<ConvSpec>& have, const std::vector<ConvSpec>& want, const char* what) {
    if (have.size() != want.size()) fail(std::string(what) + ": wrong layer count");
    for (std::size_t i = 0; i < have.size(); ++i) {
      if (!same_layer(have[i], want[i])) fail(std::string(what) + "." + std::to_string(i) + ": layer shape mismatch");
      have[i].validate();
    }
  };
  layers(encoder, l.encoder, "encoder");
  layers(embedding, l.embedding, "embedding");
  layers(decoder, l.decoder, "decoder");
  if (groups.size() != l.groups.size()) fail("groups: wrong branch count");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    layers({groups[i].dw, groups[i].pw}, {l.groups[i].dw, l.groups[i].pw}, "groups");
    const auto& a = groups[i].attention;
    if (a.channels != l.groups[i].attention.channels || a.hidden != l.groups[i].attention.hidden) {
      fail("groups." + std::to_string(i) + ".attn: shape mismatch");
    }
    a.validate();
  }
}

void MostsWeights::visit(const ArrayVisitor& fn) {
  for (std::size_t i = 0; i < encoder.size(); ++i) visit_conv("encoder." + std::to_string(i), encoder[i], fn);
  for (std::size_t i = 0; i < embedding.size(); ++i) visit_conv("embedding." + std::to_string(i), embedding[i], fn);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string base = "groups." + std::to_string(i);
    auto& a = groups[i].attention;
    visit_conv(base + ".dw", groups[i].dw, fn);
    visit_conv(base + ".pw", groups[i].pw, fn);
    fn(base + ".attn.w1", {a.hidden, a.channels}, a.w1);
    fn(base + ".attn.b1", {a.hidden}, a.b1);
    fn(base + ".attn.w2", {a.channels, a.hidden}, a.w2);
    fn(base + ".attn.b2", {a.channels}, a.b2);
  }
  for (std::size_t i = 0; i < decoder.size(); ++i) visit_conv("decoder." + std::to_string(i), decoder[i], fn);
}

EncodedImage encode(const Tensor& image, const MostsWeights& w) {
  EncodedImage out;
  Tensor x = image;
  for (std::size_t i = 0; i < w.encoder.size(); ++i) {
    x = conv_forward(x, w.encoder[i]);
    if (i + 1 < w.encoder.size()) out.skips.push_back(x);
  }
  for (const auto& s : w.embedding) x = conv_forward(x, s);
  out.embedding = std::move(x);
  return out;
}

Tensor mosts_head(const EncodedImage& query, const Tensor& pooled_reference, const MostsWeights& w, int out_h,
                  int out_w) {
  if (w.decoder.size() > query.skips.size()) throw Error(ErrorKind::ShapeMismatch, "more decoder blocks than skips");
  const Tensor& fq = query.embedding;
  const Tensor s = cosine_similarity_map(pooled_reference, fq);
  Tensor f = local_grouping(similarity_mask(fq, s), fq, w.groups);
  for (std::size_t b = 0; b < w.decoder.size(); ++b) {
    const Tensor& skip = query.skips[query.skips.size() - 1 - b];
    f = conv_forward(concat_channels(bilinear_upsample(f, skip.height, skip.width), skip), w.decoder[b]);
  }
  return sigmoid(bilinear_upsample(f, out_h, out_w));
}

Tensor mosts_forward(const ImageRGB& query, const ImageRGB& reference, const ToyMostsConfig& cfg,
                     const MostsWeights& w) {
  w.check(cfg);
  const int stride = cfg.total_stride();
  for (const ImageRGB* img : {&query, &reference}) {
    if (img->width() < stride || img->height() < stride || img->width() % stride != 0 || img->height() % stride != 0) {
      throw Error(ErrorKind::ShapeMismatch,
                  "image sides must be positive multiples of " + std::to_string(stride));
    }
  }
  const EncodedImage q = encode(image_to_tensor(query), w);
  const EncodedImage r = encode(image_to_tensor(reference), w);
  return mosts_head(q, global_avg_pool(r.embedding), w, query.height(), query.width());
}

}  // namespace groundsight::mosts
