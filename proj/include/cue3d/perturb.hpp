#pragma once

#include <cstdint>
#include <vector>

#include "cue3d/image.hpp"

namespace cue3d {

// Canny configuration. Thresholds are on the [0,255] intensity scale: the
// gradient magnitude is sqrt(gx^2 + gy^2) / 4 of the raw 3x3 Sobel
// responses, so a clean step of contrast c peaks near magnitude c.
struct canny_params {
  double sigma = 1.4;  // pre-smoothing Gaussian
  double low = 60.0;
  double high = 160.0;
};

// Edge map (1 = edge) of a luma image. Deterministic pipeline: separable
// Gaussian blur (radius ceil(3*sigma), clamp-at-border), 3x3 Sobel,
// 4-sector non-maximum suppression with a fixed tie rule, 8-connected
// hysteresis. The outermost pixel ring never fires.
std::vector<uint8_t> canny_edges(const std::vector<uint8_t>& luma, int width, int height,
                                 const canny_params& params);

// Exact squared Euclidean distance from every pixel to the nearest set
// pixel of mask, and that pixel's linear index (-1 when the mask is empty).
void feature_transform(const std::vector<uint8_t>& mask, int width, int height,
                       std::vector<int64_t>& dist_sq, std::vector<int32_t>& nearest);

// Grows the silhouette by a disc of the given radius. RGB of original
// foreground pixels is untouched; grown pixels copy the RGB of their
// nearest original foreground pixel and get alpha 255.
rgba_image dilate_uniform(const rgba_image& img, int radius);

// Grows the silhouette into a union of axis-aligned blocks so that every
// boundary run is horizontal or vertical with length >= min_segment.
// Fill rule matches dilate_uniform.
rgba_image dilate_manhattan(const rgba_image& img, int min_segment);

// Places the occluder's silhouette (scaled so its bounding-box diagonal is
// scale x the object's) at a seeded random boundary pixel and removes both
// mask and RGB underneath. Repositions until the overlap lands within the
// accepted band, up to 64 attempts.
rgba_image occlude(const rgba_image& img, const rgba_image& occluder_mask, double scale,
                   uint64_t seed);

// Replaces the object interior with its Canny edge map: white on edges,
// black elsewhere; alpha and background untouched.
rgba_image edges_only(const rgba_image& img, double low, double high);

// Gaussian-blurs only the pixels within edge_radius of a detected edge
// (blur weights restricted to foreground); everything else is bit-exact.
rgba_image soften_edges(const rgba_image& img, int edge_radius, double sigma);

// Permutes foreground RGB values inside each n x n grid cell (anchored at
// the image origin). Background and alpha are untouched.
rgba_image pixel_shuffle(const rgba_image& img, int n, uint64_t seed);

// Opaque texture images for an external renderer to swap onto objects.
rgba_image checkerboard_texture(int cell, int width, int height);
rgba_image gray_texture(uint8_t level, int width, int height);

// Fractal Perlin noise mapped to grayscale around 128. Base frequency is
// four lattice cells across the image width; deterministic given seed.
rgba_image perlin_texture(int octaves, double persistence, uint64_t seed, int width, int height);

}  // namespace cue3d
