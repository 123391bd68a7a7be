#pragma once

#include <cstdint>
#include <vector>

#include "cue3d/error.hpp"

namespace cue3d {

struct rgba {
  uint8_t r = 0, g = 0, b = 0, a = 0;
};

inline bool operator==(const rgba& x, const rgba& y) {
  return x.r == y.r && x.g == y.g && x.b == y.b && x.a == y.a;
}

// A pixel belongs to the object silhouette iff its alpha clears this
// threshold. Every mask consumer in the project goes through is_foreground
// so perturbations, rendering and metrics agree on what the mask is.
constexpr uint8_t mask_alpha_threshold = 128;

inline bool is_foreground(const rgba& p) { return p.a >= mask_alpha_threshold; }

// 8-bit RGBA raster, row-major. Alpha carries the silhouette mask.
struct rgba_image {
  int width = 0;
  int height = 0;
  std::vector<rgba> pixels;

  rgba_image() = default;
  rgba_image(int w, int h, rgba fill = {0, 0, 0, 0}) : width(w), height(h) {
    if (w <= 0 || h <= 0) throw error("BadDimensions", "image dimensions must be positive");
    pixels.assign(static_cast<size_t>(w) * h, fill);
  }

  rgba& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  const rgba& at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  size_t pixel_count() const { return pixels.size(); }
};

// Binary silhouette under the shared alpha rule, 1 = foreground.
std::vector<uint8_t> mask_of(const rgba_image& img);

size_t foreground_count(const rgba_image& img);

// ITU-R 601 luma, rounded to nearest integer in [0,255].
std::vector<uint8_t> luma_of(const rgba_image& img);

}  // namespace cue3d
