#include "cue3d/image.hpp"

#include <cmath>

namespace cue3d {

std::vector<uint8_t> mask_of(const rgba_image& img) {
  std::vector<uint8_t> mask(img.pixel_count());
  for (size_t i = 0; i < img.pixel_count(); i++) mask[i] = is_foreground(img.pixels[i]) ? 1 : 0;
  return mask;
}

size_t foreground_count(const rgba_image& img) {
  size_t n = 0;
  for (const auto& p : img.pixels) n += is_foreground(p) ? 1 : 0;
  return n;
}

std::vector<uint8_t> luma_of(const rgba_image& img) {
  std::vector<uint8_t> luma(img.pixel_count());
  for (size_t i = 0; i < img.pixel_count(); i++) {
    const rgba& p = img.pixels[i];
    double y = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    luma[i] = static_cast<uint8_t>(std::lround(y));
  }
  return luma;
}

}  // namespace cue3d
