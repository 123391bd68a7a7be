#include <cmath>
#include <vector>

#include "cue3d/perturb.hpp"

namespace cue3d {

namespace {

// tan(22.5 degrees); sector boundaries resolve toward the axis sectors.
constexpr double sector_tan = 0.414213562373095049;

std::vector<double> gaussian_blur_clamped(const std::vector<uint8_t>& img, int w, int h,
                                          double sigma) {
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0;
  for (int i = -radius; i <= radius; i++) {
    kernel[i + radius] = std::exp(-(double(i) * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  std::vector<double> horiz(img.size());
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++) {
      double s = 0;
      for (int k = -radius; k <= radius; k++)
        s += kernel[k + radius] * img[size_t(y) * w + clampi(x + k, 0, w - 1)];
      horiz[size_t(y) * w + x] = s;
    }
  std::vector<double> out(img.size());
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++) {
      double s = 0;
      for (int k = -radius; k <= radius; k++)
        s += kernel[k + radius] * horiz[size_t(clampi(y + k, 0, h - 1)) * w + x];
      out[size_t(y) * w + x] = s;
    }
  return out;
}

}  // namespace

std::vector<uint8_t> canny_edges(const std::vector<uint8_t>& luma, int w, int h,
                                 const canny_params& params) {
  std::vector<uint8_t> edges(luma.size(), 0);
  if (w < 3 || h < 3) return edges;

  std::vector<double> smooth = gaussian_blur_clamped(luma, w, h, params.sigma);

  // 3x3 Sobel; magnitude normalized by 4 so thresholds live on the
  // intensity scale. Border ring stays zero.
  std::vector<double> mag(luma.size(), 0.0);
  std::vector<double> gxs(luma.size(), 0.0), gys(luma.size(), 0.0);
  for (int y = 1; y < h - 1; y++)
    for (int x = 1; x < w - 1; x++) {
      auto at = [&](int dx, int dy) { return smooth[size_t(y + dy) * w + (x + dx)]; };
      double gx = (at(1, -1) + 2.0 * at(1, 0) + at(1, 1)) -
                  (at(-1, -1) + 2.0 * at(-1, 0) + at(-1, 1));
      double gy = (at(-1, 1) + 2.0 * at(0, 1) + at(1, 1)) -
                  (at(-1, -1) + 2.0 * at(0, -1) + at(1, -1));
      size_t i = size_t(y) * w + x;
      gxs[i] = gx;
      gys[i] = gy;
      mag[i] = std::sqrt(gx * gx + gy * gy) / 4.0;
    }

  // Non-maximum suppression. d is the sector offset; a pixel survives when
  // it beats the -d neighbor strictly and the +d neighbor at least ties,
  // which keeps exactly one pixel of a symmetric two-pixel ridge.
  std::vector<uint8_t> nms(luma.size(), 0);
  for (int y = 1; y < h - 1; y++)
    for (int x = 1; x < w - 1; x++) {
      size_t i = size_t(y) * w + x;
      double m = mag[i];
      if (m < params.low) continue;
      double ax = std::abs(gxs[i]), ay = std::abs(gys[i]);
      int dx, dy;
      if (ay <= sector_tan * ax) {
        dx = 1, dy = 0;
      } else if (ax <= sector_tan * ay) {
        dx = 0, dy = 1;
      } else if ((gxs[i] > 0) == (gys[i] > 0)) {
        dx = 1, dy = 1;
      } else {
        dx = 1, dy = -1;
      }
      double fwd = mag[size_t(y + dy) * w + (x + dx)];
      double bwd = mag[size_t(y - dy) * w + (x - dx)];
      if (m >= fwd && m > bwd) nms[i] = 1;
    }

  // Hysteresis: grow 8-connected from strong pixels through weak ones.
  std::vector<size_t> stack;
  for (int y = 1; y < h - 1; y++)
    for (int x = 1; x < w - 1; x++) {
      size_t i = size_t(y) * w + x;
      if (nms[i] && mag[i] >= params.high && !edges[i]) {
        edges[i] = 1;
        stack.push_back(i);
        while (!stack.empty()) {
          size_t j = stack.back();
          stack.pop_back();
          int jx = static_cast<int>(j % w), jy = static_cast<int>(j / w);
          for (int ddy = -1; ddy <= 1; ddy++)
            for (int ddx = -1; ddx <= 1; ddx++) {
              int nx = jx + ddx, ny = jy + ddy;
              if (nx < 1 || nx >= w - 1 || ny < 1 || ny >= h - 1) continue;
              size_t k = size_t(ny) * w + nx;
              if (nms[k] && !edges[k] && mag[k] >= params.low) {
                edges[k] = 1;
                stack.push_back(k);
              }
            }
        }
      }
    }
  return edges;
}

}  // namespace cue3d
