#include "groundsight/collage/perlin.hpp"

#include <array>
#include <cmath>

#include "groundsight/core/error.hpp"
#include "groundsight/core/random.hpp"

namespace groundsight::collage {
namespace {

struct Grad {
  double x, y;
};

// cos/sin of k * pi / 8, written out so every platform uses identical values.
constexpr std::array<Grad, 16> kGradients{{
    {1.0, 0.0},
    {0.92387953251128674, 0.38268343236508978},
    {0.70710678118654757, 0.70710678118654757},
    {0.38268343236508978, 0.92387953251128674},
    {0.0, 1.0},
    {-0.38268343236508978, 0.92387953251128674},
    {-0.70710678118654757, 0.70710678118654757},
    {-0.92387953251128674, 0.38268343236508978},
    {-1.0, 0.0},
    {-0.92387953251128674, -0.38268343236508978},
    {-0.70710678118654757, -0.70710678118654757},
    {-0.38268343236508978, -0.92387953251128674},
    {0.0, -1.0},
    {0.38268343236508978, -0.92387953251128674},
    {0.70710678118654757, -0.70710678118654757},
    {0.92387953251128674, -0.38268343236508978},
}};

inline const Grad& gradient(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  const std::uint64_t h =
      mix64(seed ^ mix64(static_cast<std::uint64_t>(ix) ^ mix64(static_cast<std::uint64_t>(iy))));
  return kGradients[h & 15u];
}

inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

// Shared by perlin2d and perlin_field so both produce bit-identical values.
inline double blend(double fx, double fy, double u, double v, const Grad& g00, const Grad& g10,
                    const Grad& g01, const Grad& g11) {
  const double n00 = g00.x * fx + g00.y * fy;
  const double n10 = g10.x * (fx - 1.0) + g10.y * fy;
  const double n01 = g01.x * fx + g01.y * (fy - 1.0);
  const double n11 = g11.x * (fx - 1.0) + g11.y * (fy - 1.0);
  const double nx0 = n00 + u * (n10 - n00);
  const double nx1 = n01 + u * (n11 - n01);
  return nx0 + v * (nx1 - nx0);
}

std::uint64_t octave_seed(std::uint64_t seed, int octave) {
  return octave == 0 ? seed : sub_seed(seed, static_cast<std::uint64_t>(octave));
}

struct Axis {
  std::int64_t cell;
  double frac;
  double fade;
};

}  // namespace

void PerlinParams::validate() const {
  if (grid_size < 1) throw Error(ErrorKind::InvalidArgument, "perlin grid_size must be >= 1");
  if (octaves < 1) throw Error(ErrorKind::InvalidArgument, "perlin octaves must be >= 1");
  if (!(persistence > 0.0 && persistence <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "perlin persistence must lie in (0, 1]");
  }
  if (!(lacunarity >= 1.0)) throw Error(ErrorKind::InvalidArgument, "perlin lacunarity must be >= 1");
}

double perlin2d(double x, double y, std::uint64_t seed) {
  const double x0 = std::floor(x);
  const double y0 = std::floor(y);
  const double fx = x - x0;
  const double fy = y - y0;
  const auto ix = static_cast<std::int64_t>(x0);
  const auto iy = static_cast<std::int64_t>(y0);
  return blend(fx, fy, fade(fx), fade(fy), gradient(ix, iy, seed), gradient(ix + 1, iy, seed),
               gradient(ix, iy + 1, seed), gradient(ix + 1, iy + 1, seed));
}

ScalarField perlin_field(int width, int height, const PerlinParams& params, std::uint64_t seed) {
  params.validate();
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidArgument, "field size must be >= 1");

  ScalarField field{width, height, std::vector<double>(static_cast<std::size_t>(width) * height, 0.0)};
  std::vector<Axis> cols(static_cast<std::size_t>(width));
  std::vector<Axis> rows(static_cast<std::size_t>(height));
  std::vector<const Grad*> lattice;

  double amplitude = 1.0;
  double total = 0.0;
  for (int o = 0; o < params.octaves; ++o) {
    const double freq = params.grid_size * std::pow(params.lacunarity, o);
    const std::uint64_t s = octave_seed(seed, o);
    auto fill_axis = [freq](std::vector<Axis>& axis, int n) {
      for (int i = 0; i < n; ++i) {
        const double c = (i + 0.5) / n * freq;
        const double c0 = std::floor(c);
        const double f = c - c0;
        axis[static_cast<std::size_t>(i)] = {static_cast<std::int64_t>(c0), f, fade(f)};
      }
    };
    fill_axis(cols, width);
    fill_axis(rows, height);

    // Gradients of every lattice corner the octave touches.
    const std::int64_t nx = cols.back().cell + 2;
    const std::int64_t ny = rows.back().cell + 2;
    lattice.resize(static_cast<std::size_t>(nx * ny));
    for (std::int64_t j = 0; j < ny; ++j) {
      for (std::int64_t i = 0; i < nx; ++i) lattice[static_cast<std::size_t>(j * nx + i)] = &gradient(i, j, s);
    }

    for (int py = 0; py < height; ++py) {
      const Axis& ry = rows[static_cast<std::size_t>(py)];
      const std::size_t r0 = static_cast<std::size_t>(ry.cell * nx);
      const std::size_t r1 = r0 + static_cast<std::size_t>(nx);
      double* out = field.values.data() + static_cast<std::size_t>(py) * width;
      for (int px = 0; px < width; ++px) {
        const Axis& cx = cols[static_cast<std::size_t>(px)];
        const auto c = static_cast<std::size_t>(cx.cell);
        const double n = blend(cx.frac, ry.frac, cx.fade, ry.fade, *lattice[r0 + c], *lattice[r0 + c + 1],
                               *lattice[r1 + c], *lattice[r1 + c + 1]);
        out[px] += amplitude * n;
      }
    }
    total += amplitude;
    amplitude *= params.persistence;
  }
  for (double& v : field.values) v /= total;
  return field;
}

}  // namespace groundsight::collage
