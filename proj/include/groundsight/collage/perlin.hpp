#pragma once

#include <cstdint>
#include <vector>

namespace groundsight::collage {

/// Fractal Perlin settings. grid_size is the number of lattice cells across the
/// image at the base octave; each further octave multiplies the frequency by
/// lacunarity and the amplitude by persistence.
struct PerlinParams {
  int grid_size = 4;
  int octaves = 4;
  double persistence = 0.5;
  double lacunarity = 2.0;

  void validate() const;
};

/// Classic 2-D gradient noise: unit gradients hashed from (lattice corner,
/// seed), quintic fade 6t^5 - 15t^4 + 10t^3, bilinear blend. Exactly 0 on
/// integer lattice points and bounded by sqrt(2)/2 in magnitude.
double perlin2d(double x, double y, std::uint64_t seed);

struct ScalarField {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Normalized fractal sum. Pixel (px, py) samples octave o at
/// ((px + 0.5) / w * f_o, (py + 0.5) / h * f_o) with f_o = grid_size * lacunarity^o,
/// using `seed` for octave 0 and sub_seed(seed, o) above it. The sum is divided
/// by the total amplitude, so the sqrt(2)/2 bound carries over.
ScalarField perlin_field(int width, int height, const PerlinParams& params, std::uint64_t seed);

}  // namespace groundsight::collage
