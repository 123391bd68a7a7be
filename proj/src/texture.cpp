#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "cue3d/error.hpp"
#include "cue3d/perturb.hpp"
#include "cue3d/rng.hpp"

namespace cue3d {

rgba_image checkerboard_texture(int cell, int width, int height) {
  if (cell < 1) throw error("BadParameter", "cell must be >= 1");
  rgba_image img(width, height);
  for (int y = 0; y < height; y++)
    for (int x = 0; x < width; x++) {
      bool white = ((x / cell) + (y / cell)) % 2 == 0;
      uint8_t v = white ? 255 : 0;
      img.at(x, y) = {v, v, v, 255};
    }
  return img;
}

rgba_image gray_texture(uint8_t level, int width, int height) {
  return rgba_image(width, height, {level, level, level, 255});
}

namespace {

const int grad_x[8] = {1, -1, 1, -1, 1, -1, 0, 0};
const int grad_y[8] = {1, 1, -1, -1, 0, 0, 1, -1};

double fade(double t) { return t * t * t * (t * (t * 6 - 15) + 10); }

double lerp(double a, double b, double t) { return a + t * (b - a); }

// Single-octave 2D gradient noise over the seeded permutation table.
double gradient_noise(const std::array<uint8_t, 512>& perm, double u, double v) {
  int xi = static_cast<int>(std::floor(u));
  int yi = static_cast<int>(std::floor(v));
  double xf = u - xi, yf = v - yi;
  int x0 = xi & 255, y0 = yi & 255;

  auto grad_dot = [&](int gx, int gy, double dx, double dy) {
    int g = perm[perm[gx & 255] + (gy & 255)] & 7;
    return grad_x[g] * dx + grad_y[g] * dy;
  };
  double n00 = grad_dot(x0, y0, xf, yf);
  double n10 = grad_dot(x0 + 1, y0, xf - 1, yf);
  double n01 = grad_dot(x0, y0 + 1, xf, yf - 1);
  double n11 = grad_dot(x0 + 1, y0 + 1, xf - 1, yf - 1);
  double su = fade(xf), sv = fade(yf);
  return lerp(lerp(n00, n10, su), lerp(n01, n11, su), sv);
}

}  // namespace

rgba_image perlin_texture(int octaves, double persistence, uint64_t seed, int width, int height) {
  if (octaves < 1) throw error("BadParameter", "octaves must be >= 1");
  if (!(persistence > 0 && persistence <= 1))
    throw error("BadParameter", "persistence must be in (0, 1]");

  std::array<uint8_t, 512> perm;
  {
    std::vector<uint8_t> table(256);
    std::iota(table.begin(), table.end(), 0);
    rng random(seed, "perlin");
    random.shuffle(table);
    for (int i = 0; i < 512; i++) perm[i] = table[i & 255];
  }

  double total_amp = 0;
  for (int k = 0; k < octaves; k++) total_amp += std::pow(persistence, k);

  rgba_image img(width, height);
  const double base = 4.0 / width;  // four lattice cells across the image
  for (int y = 0; y < height; y++)
    for (int x = 0; x < width; x++) {
      double value = 0, amp = 1, freq = base;
      for (int k = 0; k < octaves; k++) {
        value += amp * gradient_noise(perm, x * freq, y * freq);
        amp *= persistence;
        freq *= 2;
      }
      value /= total_amp;
      int level = static_cast<int>(std::lround(128.0 + 127.0 * value));
      uint8_t v = static_cast<uint8_t>(std::clamp(level, 0, 255));
      img.at(x, y) = {v, v, v, 255};
    }
  return img;
}

}  // namespace cue3d
