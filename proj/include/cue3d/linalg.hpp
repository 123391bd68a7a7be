#pragma once

#include <array>
#include <cmath>

namespace cue3d {

// Cyclic Jacobi eigendecomposition for small symmetric matrices.
// Eigenvalues land on the diagonal of a; columns of v are eigenvectors.
template <int N>
void jacobi_eigen(std::array<std::array<double, N>, N>& a, std::array<std::array<double, N>, N>& v) {
  for (int i = 0; i < N; i++)
    for (int j = 0; j < N; j++) v[i][j] = i == j ? 1.0 : 0.0;

  for (int sweep = 0; sweep < 50; sweep++) {
    double off = 0;
    for (int p = 0; p < N; p++)
      for (int q = p + 1; q < N; q++) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;

    for (int p = 0; p < N; p++)
      for (int q = p + 1; q < N; q++) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < N; k++) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < N; k++) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < N; k++) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
}

}  // namespace cue3d
