#include "cue3d/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cue3d/error.hpp"
#include "cue3d/rng.hpp"

namespace cue3d {

namespace {

constexpr int64_t kFar = std::numeric_limits<int64_t>::max() / 4;

struct bbox2 {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive; empty when x1 < x0
  bool empty() const { return x1 < x0; }
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  double diagonal() const { return std::sqrt(double(width()) * width() + double(height()) * height()); }
};

bbox2 mask_bbox(const std::vector<uint8_t>& mask, int w, int h) {
  bbox2 b{w, h, -1, -1};
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++)
      if (mask[size_t(y) * w + x]) {
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
      }
  return b;
}

// 1D squared-distance transform (lower envelope of parabolas), carrying
// the source index of the winning parabola.
void dt_1d(const std::vector<int64_t>& f, const std::vector<int32_t>& src, int n,
           std::vector<int64_t>& d, std::vector<int32_t>& out_src) {
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; q++) {
    if (f[q] >= kFar) continue;
    double s;
    for (;;) {
      int p = v[k];
      if (f[p] >= kFar) {
        // Previous vertex is unreachable; replace it outright.
        if (k == 0) {
          v[0] = q;
          z[0] = -std::numeric_limits<double>::infinity();
          z[1] = std::numeric_limits<double>::infinity();
          s = z[0];
          break;
        }
        k--;
        continue;
      }
      s = (double(f[q] + int64_t(q) * q) - double(f[p] + int64_t(p) * p)) / (2.0 * q - 2.0 * p);
      if (s <= z[k]) {
        k--;
        if (k < 0) {
          k = 0;
          v[0] = q;
          z[0] = -std::numeric_limits<double>::infinity();
          z[1] = std::numeric_limits<double>::infinity();
          break;
        }
        continue;
      }
      k++;
      v[k] = q;
      z[k] = s;
      z[k + 1] = std::numeric_limits<double>::infinity();
      break;
    }
  }
  k = 0;
  for (int q = 0; q < n; q++) {
    while (z[k + 1] < q) k++;
    int p = v[k];
    if (f[p] >= kFar) {
      d[q] = kFar;
      out_src[q] = -1;
    } else {
      d[q] = int64_t(q - p) * (q - p) + f[p];
      out_src[q] = src[p];
    }
  }
}

}  // namespace

void feature_transform(const std::vector<uint8_t>& mask, int w, int h,
                       std::vector<int64_t>& dist_sq, std::vector<int32_t>& nearest) {
  dist_sq.assign(size_t(w) * h, kFar);
  nearest.assign(size_t(w) * h, -1);

  // Column pass: nearest set pixel within each column.
  std::vector<int64_t> col_d(size_t(w) * h, kFar);
  std::vector<int32_t> col_src(size_t(w) * h, -1);
  for (int x = 0; x < w; x++) {
    int last = -1;
    for (int y = 0; y < h; y++) {
      size_t i = size_t(y) * w + x;
      if (mask[i]) last = y;
      if (last >= 0) {
        col_d[i] = int64_t(y - last) * (y - last);
        col_src[i] = static_cast<int32_t>(size_t(last) * w + x);
      }
    }
    last = -1;
    for (int y = h - 1; y >= 0; y--) {
      size_t i = size_t(y) * w + x;
      if (mask[i]) last = y;
      if (last >= 0) {
        int64_t d = int64_t(last - y) * (last - y);
        if (d < col_d[i]) {
          col_d[i] = d;
          col_src[i] = static_cast<int32_t>(size_t(last) * w + x);
        }
      }
    }
  }

  // Row pass over the column distances.
  std::vector<int64_t> f(w), d(w);
  std::vector<int32_t> src(w), out_src(w);
  for (int y = 0; y < h; y++) {
    for (int x = 0; x < w; x++) {
      f[x] = col_d[size_t(y) * w + x];
      src[x] = col_src[size_t(y) * w + x];
    }
    dt_1d(f, src, w, d, out_src);
    for (int x = 0; x < w; x++) {
      dist_sq[size_t(y) * w + x] = d[x];
      nearest[size_t(y) * w + x] = out_src[x];
    }
  }
}

namespace {

// Common fill: paint grown pixels with their nearest foreground RGB.
rgba_image grow_mask_filled(const rgba_image& img, const std::vector<uint8_t>& grown,
                            const std::vector<int32_t>& nearest) {
  rgba_image out = img;
  const std::vector<uint8_t> mask = mask_of(img);
  for (size_t i = 0; i < out.pixel_count(); i++) {
    if (grown[i] && !mask[i]) {
      const rgba& fill = img.pixels[static_cast<size_t>(nearest[i])];
      out.pixels[i] = {fill.r, fill.g, fill.b, 255};
    }
  }
  return out;
}

}  // namespace

rgba_image dilate_uniform(const rgba_image& img, int radius) {
  if (radius < 1) throw error("BadParameter", "radius must be >= 1");
  const std::vector<uint8_t> mask = mask_of(img);
  int w = img.width, h = img.height;
  if (mask_bbox(mask, w, h).empty()) throw error("EmptyMask", "image has no foreground");

  std::vector<int64_t> d2;
  std::vector<int32_t> nearest;
  feature_transform(mask, w, h, d2, nearest);

  std::vector<uint8_t> grown(mask.size());
  int64_t r2 = int64_t(radius) * radius;
  for (size_t i = 0; i < mask.size(); i++) grown[i] = d2[i] <= r2 ? 1 : 0;
  return grow_mask_filled(img, grown, nearest);
}

rgba_image dilate_manhattan(const rgba_image& img, int min_segment) {
  if (min_segment < 2) throw error("BadParameter", "min_segment must be >= 2");
  const std::vector<uint8_t> mask = mask_of(img);
  int w = img.width, h = img.height;
  bbox2 bb = mask_bbox(mask, w, h);
  if (bb.empty()) throw error("EmptyMask", "image has no foreground");

  std::vector<int64_t> d2;
  std::vector<int32_t> nearest;
  feature_transform(mask, w, h, d2, nearest);

  // Pre-dilate by half a block, then rasterize onto an N x N block grid
  // anchored at the mask bounding box. A block is kept when the dilated
  // mask covers at least half of it or it touches the original mask, so
  // the result is a superset of the mask whose boundary follows grid
  // lines (every run a multiple of N).
  const int n = min_segment;
  int pre = (n + 1) / 2;
  int64_t pre2 = int64_t(pre) * pre;

  auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  int bx0 = floor_div(0 - bb.x0, n), bx1 = floor_div(w - 1 - bb.x0, n);
  int by0 = floor_div(0 - bb.y0, n), by1 = floor_div(h - 1 - bb.y0, n);
  int bw = bx1 - bx0 + 1, bh = by1 - by0 + 1;

  std::vector<uint8_t> keep(size_t(bw) * bh, 0);
  for (int by = by0; by <= by1; by++) {
    for (int bx = bx0; bx <= bx1; bx++) {
      int px0 = bb.x0 + bx * n, py0 = bb.y0 + by * n;
      int covered = 0, total = 0;
      bool touches_mask = false;
      for (int y = std::max(0, py0); y < std::min(h, py0 + n); y++)
        for (int x = std::max(0, px0); x < std::min(w, px0 + n); x++) {
          size_t i = size_t(y) * w + x;
          total++;
          if (d2[i] <= pre2) covered++;
          if (mask[i]) touches_mask = true;
        }
      if (total > 0 && (touches_mask || 2 * covered >= total))
        keep[size_t(by - by0) * bw + (bx - bx0)] = 1;
    }
  }

  std::vector<uint8_t> grown(mask.size(), 0);
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++) {
      int bx = floor_div(x - bb.x0, n) - bx0;
      int by = floor_div(y - bb.y0, n) - by0;
      if (keep[size_t(by) * bw + bx]) grown[size_t(y) * w + x] = 1;
    }
  return grow_mask_filled(img, grown, nearest);
}

rgba_image occlude(const rgba_image& img, const rgba_image& occluder_mask, double scale,
                   uint64_t seed) {
  if (!(scale > 0 && scale <= 1)) throw error("BadParameter", "scale must be in (0, 1]");
  const std::vector<uint8_t> mask = mask_of(img);
  int w = img.width, h = img.height;
  bbox2 obj_bb = mask_bbox(mask, w, h);
  if (obj_bb.empty()) throw error("EmptyMask", "object image has no foreground");

  const std::vector<uint8_t> occ_full = mask_of(occluder_mask);
  bbox2 occ_bb = mask_bbox(occ_full, occluder_mask.width, occluder_mask.height);
  if (occ_bb.empty()) throw error("EmptyMask", "occluder image has no foreground");

  // Scale the occluder (cropped to its bbox) so its diagonal is
  // scale x the object's bbox diagonal; nearest-neighbor resampling.
  double factor = scale * obj_bb.diagonal() / occ_bb.diagonal();
  int ow = std::max(1, static_cast<int>(std::lround(occ_bb.width() * factor)));
  int oh = std::max(1, static_cast<int>(std::lround(occ_bb.height() * factor)));
  std::vector<uint8_t> occ(size_t(ow) * oh, 0);
  size_t occ_area = 0;
  for (int y = 0; y < oh; y++)
    for (int x = 0; x < ow; x++) {
      int sx = occ_bb.x0 + std::min(occ_bb.width() - 1,
                                    static_cast<int>((x + 0.5) * occ_bb.width() / ow));
      int sy = occ_bb.y0 + std::min(occ_bb.height() - 1,
                                    static_cast<int>((y + 0.5) * occ_bb.height() / oh));
      uint8_t v = occ_full[size_t(sy) * occluder_mask.width + sx];
      occ[size_t(y) * ow + x] = v;
      occ_area += v;
    }
  if (occ_area == 0) {
    // Resampling can drop a sparse occluder entirely; keep a single pixel.
    occ[0] = 1;
    occ_area = 1;
  }

  // Boundary pixels: foreground with a 4-neighbor outside the mask.
  std::vector<int> boundary;
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++) {
      if (!mask[size_t(y) * w + x]) continue;
      bool edge = x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                  !mask[size_t(y) * w + x - 1] || !mask[size_t(y) * w + x + 1] ||
                  !mask[size_t(y - 1) * w + x] || !mask[size_t(y + 1) * w + x];
      if (edge) boundary.push_back(y * w + x);
    }

  size_t obj_area = 0;
  for (uint8_t m : mask) obj_area += m;
  // The occluder must remove a visible but not overwhelming chunk: at
  // least 5% of the object (capped at half the occluder for occluders too
  // small to ever reach 5%), at most 90%.
  size_t min_overlap = std::max<size_t>(
      1, std::min(static_cast<size_t>(0.05 * double(obj_area)), occ_area / 2));
  size_t max_overlap = static_cast<size_t>(0.90 * double(obj_area));

  rng random(seed, "occlude");
  for (int attempt = 0; attempt < 64; attempt++) {
    int center = boundary[static_cast<size_t>(random.below(boundary.size()))];
    int cx = center % w, cy = center / w;
    int x0 = cx - ow / 2, y0 = cy - oh / 2;

    size_t overlap = 0;
    for (int y = std::max(0, y0); y < std::min(h, y0 + oh); y++)
      for (int x = std::max(0, x0); x < std::min(w, x0 + ow); x++)
        if (occ[size_t(y - y0) * ow + (x - x0)] && mask[size_t(y) * w + x]) overlap++;

    if (overlap < min_overlap || overlap > max_overlap) continue;

    rgba_image out = img;
    for (int y = std::max(0, y0); y < std::min(h, y0 + oh); y++)
      for (int x = std::max(0, x0); x < std::min(w, x0 + ow); x++)
        if (occ[size_t(y - y0) * ow + (x - x0)]) out.at(x, y) = {0, 0, 0, 0};
    return out;
  }
  throw error("PlacementFailed", "no valid occluder placement in 64 attempts");
}

rgba_image edges_only(const rgba_image& img, double low, double high) {
  if (!(low >= 0 && low < high && high <= 255))
    throw error("BadParameter", "need 0 <= low < high <= 255");
  const std::vector<uint8_t> mask = mask_of(img);
  if (mask_bbox(mask, img.width, img.height).empty())
    throw error("EmptyMask", "image has no foreground");

  canny_params params;
  params.low = low;
  params.high = high;
  std::vector<uint8_t> edges = canny_edges(luma_of(img), img.width, img.height, params);

  rgba_image out = img;
  for (size_t i = 0; i < out.pixel_count(); i++) {
    if (!mask[i]) continue;
    uint8_t v = edges[i] ? 255 : 0;
    out.pixels[i].r = v;
    out.pixels[i].g = v;
    out.pixels[i].b = v;
    // alpha untouched: silhouette is preserved
  }
  return out;
}

rgba_image soften_edges(const rgba_image& img, int edge_radius, double sigma) {
  if (edge_radius < 1) throw error("BadParameter", "edge_radius must be >= 1");
  if (!(sigma > 0)) throw error("BadParameter", "sigma must be > 0");
  const std::vector<uint8_t> mask = mask_of(img);
  int w = img.width, h = img.height;
  if (mask_bbox(mask, w, h).empty()) throw error("EmptyMask", "image has no foreground");

  std::vector<uint8_t> edges = canny_edges(luma_of(img), w, h, canny_params{});

  // Edge band: within edge_radius of any edge pixel.
  std::vector<int64_t> d2;
  std::vector<int32_t> nearest;
  feature_transform(edges, w, h, d2, nearest);
  int64_t r2 = int64_t(edge_radius) * edge_radius;

  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int i = -radius; i <= radius; i++)
    kernel[i + radius] = std::exp(-(double(i) * i) / (2.0 * sigma * sigma));

  rgba_image out = img;
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++) {
      size_t i = size_t(y) * w + x;
      if (!mask[i] || d2[i] > r2) continue;  // outside band: bit-exact copy
      // Normalized blur over foreground pixels of the original image.
      double wr = 0, wg = 0, wb = 0, wsum = 0;
      for (int ky = -radius; ky <= radius; ky++)
        for (int kx = -radius; kx <= radius; kx++) {
          int sx = x + kx, sy = y + ky;
          if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
          size_t j = size_t(sy) * w + sx;
          if (!mask[j]) continue;
          double wk = kernel[kx + radius] * kernel[ky + radius];
          wr += wk * img.pixels[j].r;
          wg += wk * img.pixels[j].g;
          wb += wk * img.pixels[j].b;
          wsum += wk;
        }
      if (wsum <= 0) continue;
      out.pixels[i].r = static_cast<uint8_t>(std::lround(wr / wsum));
      out.pixels[i].g = static_cast<uint8_t>(std::lround(wg / wsum));
      out.pixels[i].b = static_cast<uint8_t>(std::lround(wb / wsum));
    }
  return out;
}

rgba_image pixel_shuffle(const rgba_image& img, int n, uint64_t seed) {
  if (n < 2) throw error("BadParameter", "cell size must be >= 2");
  const std::vector<uint8_t> mask = mask_of(img);
  int w = img.width, h = img.height;

  rng random(seed, "pixel_shuffle");
  rgba_image out = img;
  std::vector<size_t> cell;
  for (int cy = 0; cy < h; cy += n)
    for (int cx = 0; cx < w; cx += n) {
      cell.clear();
      for (int y = cy; y < std::min(h, cy + n); y++)
        for (int x = cx; x < std::min(w, cx + n); x++) {
          size_t i = size_t(y) * w + x;
          if (mask[i]) cell.push_back(i);
        }
      if (cell.size() < 2) continue;
      std::vector<size_t> perm = cell;
      random.shuffle(perm);
      for (size_t k = 0; k < cell.size(); k++) {
        const rgba& src = img.pixels[perm[k]];
        rgba& dst = out.pixels[cell[k]];
        dst.r = src.r;
        dst.g = src.g;
        dst.b = src.b;
        // alpha stays as the destination's own value
      }
    }
  return out;
}

}  // namespace cue3d
