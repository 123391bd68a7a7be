#include "cue3d/simd.hpp"

#include <limits>

namespace cue3d::simd {

namespace {

size_t nn_scan_scalar(double qx, double qy, double qz, const double* xs, const double* ys,
                      const double* zs, size_t n, double& best_d2) {
  double best = std::numeric_limits<double>::infinity();
  size_t best_i = 0;
  for (size_t i = 0; i < n; i++) {
    double dx = xs[i] - qx;
    double dy = ys[i] - qy;
    double dz = zs[i] - qz;
    double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best) {
      best = d2;
      best_i = i;
    }
  }
  best_d2 = best;
  return best_i;
}

double sum_sq_diff_scalar(const double* a, const double* b, size_t n) {
  double s = 0;
  for (size_t i = 0; i < n; i++) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double sum_scalar(const double* a, size_t n) {
  double s = 0;
  for (size_t i = 0; i < n; i++) s += a[i];
  return s;
}

}  // namespace

const kernels scalar_kernels = {nn_scan_scalar, sum_sq_diff_scalar, sum_scalar};

}  // namespace cue3d::simd
