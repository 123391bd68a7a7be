// Compiled with -mavx2 for this translation unit only; callers reach these
// kernels through the runtime-dispatched table in simd.cpp.

#include "cue3d/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <limits>

namespace cue3d::simd {

namespace {

size_t nn_scan_avx2(double qx, double qy, double qz, const double* xs, const double* ys,
                    const double* zs, size_t n, double& best_d2) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  const __m256d vqz = _mm256_set1_pd(qz);
  __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d vidx = _mm256_setzero_pd();

  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vqz);
    // Same op order as the scalar kernel: dx*dx + dy*dy + dz*dz, so the
    // per-point distances are bit-identical (no FMA contraction here).
    __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                               _mm256_mul_pd(dz, dz));
    __m256d lt = _mm256_cmp_pd(d2, vbest, _CMP_LT_OQ);
    vbest = _mm256_blendv_pd(vbest, d2, lt);
    __m256d cur_idx = _mm256_set_pd(double(i + 3), double(i + 2), double(i + 1), double(i));
    vidx = _mm256_blendv_pd(vidx, cur_idx, lt);
  }

  // Horizontal reduce; equal lane values resolve to the lowest index,
  // matching the scalar scan's first-wins rule.
  alignas(32) double lanes_d2[4];
  alignas(32) double lanes_idx[4];
  _mm256_store_pd(lanes_d2, vbest);
  _mm256_store_pd(lanes_idx, vidx);
  double best = std::numeric_limits<double>::infinity();
  size_t best_i = 0;
  for (int lane = 0; lane < 4; lane++) {
    size_t idx = static_cast<size_t>(lanes_idx[lane]);
    if (lanes_d2[lane] < best || (lanes_d2[lane] == best && idx < best_i)) {
      best = lanes_d2[lane];
      best_i = idx;
    }
  }

  // Tail indices are all larger than vector-lane indices, so strict < is
  // the correct tie rule here.
  for (; i < n; i++) {
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

double sum_sq_diff_avx2(const double* a, const double* b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; i++) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double sum_avx2(const double* a, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; i++) s += a[i];
  return s;
}

}  // namespace

const kernels avx2_kernels = {nn_scan_avx2, sum_sq_diff_avx2, sum_avx2};

}  // namespace cue3d::simd

#else

namespace cue3d::simd {
const kernels avx2_kernels = {nullptr, nullptr, nullptr};
}  // namespace cue3d::simd

#endif
