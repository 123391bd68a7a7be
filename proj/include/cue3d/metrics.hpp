#pragma once

#include "cue3d/cloud.hpp"
#include "cue3d/image.hpp"
#include "cue3d/mesh.hpp"

namespace cue3d {

// Identical images report this capped PSNR instead of infinity.
constexpr double psnr_cap_db = 99.0;

struct fscore_params {
  double tau = 0.02;  // distance threshold, unit-sphere scale
};

// Symmetric Chamfer distance: mean nearest-neighbor distance averaged over
// both directions, (1/2n) sum_i |x_i - NN(x_i, P2)| + (1/2m) sum_j
// |x_j - NN(x_j, P1)|. Exact nearest neighbors.
double chamfer(const point_cloud& p1, const point_cloud& p2);

// Harmonic mean of precision (fraction of p1 within tau of p2) and recall
// (fraction of p2 within tau of p1); 0 when both vanish.
double fscore(const point_cloud& p1, const point_cloud& p2, const fscore_params& params);

// PSNR in dB over RGB after compositing both images onto white by alpha.
double psnr(const rgba_image& a, const rgba_image& b);

// Single-scale SSIM on luma of the white-composited images: 11x11 Gaussian
// window (sigma 1.5), K1=0.01, K2=0.03, L=255, mean over valid windows.
double ssim(const rgba_image& a, const rgba_image& b);

// Mean angle (radians) between each face normal and the average normal of
// its k nearest face centroids. Smoothness proxy: lower is smoother.
double normal_roughness(const tri_mesh& mesh, int k_neighbors);

}  // namespace cue3d
