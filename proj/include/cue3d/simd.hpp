#pragma once

#include <cstddef>
#include <cstdint>

namespace cue3d::simd {

// Hot inner-loop kernels behind the nearest-neighbor index and the image
// metrics. Scalar versions are the reference semantics; the AVX2 versions
// must agree with them exactly for nn_scan (bit-identical distances,
// lowest-index tie break) and to floating-point reassociation tolerance
// for the reductions. The active table is picked once at startup from CPU
// features; set CUE3D_SIMD=scalar|avx2 to force a lane.
struct kernels {
  // Scans n points in SoA layout and returns the index of the one nearest
  // to (qx, qy, qz); writes its squared distance to best_d2. Ties resolve
  // to the lowest index. n must be > 0.
  size_t (*nn_scan)(double qx, double qy, double qz, const double* xs, const double* ys,
                    const double* zs, size_t n, double& best_d2);

  // Sum of squared differences over n doubles.
  double (*sum_sq_diff)(const double* a, const double* b, size_t n);

  // Sum of n doubles.
  double (*sum)(const double* a, size_t n);
};

extern const kernels scalar_kernels;
extern const kernels avx2_kernels;  // valid only when avx2_available()

bool avx2_available();

// Active table and its name ("scalar" or "avx2").
const kernels& active();
const char* active_name();

}  // namespace cue3d::simd
