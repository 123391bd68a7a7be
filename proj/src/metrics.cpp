#include "cue3d/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cue3d/error.hpp"
#include "cue3d/kdtree.hpp"
#include "cue3d/simd.hpp"

namespace cue3d {

double chamfer(const point_cloud& p1, const point_cloud& p2) {
  if (p1.empty() || p2.empty()) throw error("EmptyCloud", "chamfer requires non-empty clouds");
  kd_tree tree2(p2.points);
  kd_tree tree1(p1.points);
  double sum12 = 0;
  for (const auto& p : p1.points) sum12 += tree2.nearest_distance(p);
  double sum21 = 0;
  for (const auto& q : p2.points) sum21 += tree1.nearest_distance(q);
  return sum12 / (2.0 * static_cast<double>(p1.size())) +
         sum21 / (2.0 * static_cast<double>(p2.size()));
}

double fscore(const point_cloud& p1, const point_cloud& p2, const fscore_params& params) {
  if (p1.empty() || p2.empty()) throw error("EmptyCloud", "fscore requires non-empty clouds");
  if (!(params.tau > 0)) throw error("BadThreshold", "tau must be > 0");
  kd_tree tree2(p2.points);
  kd_tree tree1(p1.points);
  size_t hits1 = 0;
  for (const auto& p : p1.points)
    if (tree2.nearest_distance(p) <= params.tau) hits1++;
  size_t hits2 = 0;
  for (const auto& q : p2.points)
    if (tree1.nearest_distance(q) <= params.tau) hits2++;
  double precision = static_cast<double>(hits1) / static_cast<double>(p1.size());
  double recall = static_cast<double>(hits2) / static_cast<double>(p2.size());
  if (precision + recall <= 0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

// RGB composited onto a white background by alpha, as doubles in [0,255].
std::vector<double> composite_white(const rgba_image& img) {
  std::vector<double> out(img.pixel_count() * 3);
  for (size_t i = 0; i < img.pixel_count(); i++) {
    const rgba& p = img.pixels[i];
    double a = p.a / 255.0;
    out[3 * i + 0] = p.r * a + 255.0 * (1.0 - a);
    out[3 * i + 1] = p.g * a + 255.0 * (1.0 - a);
    out[3 * i + 2] = p.b * a + 255.0 * (1.0 - a);
  }
  return out;
}

std::vector<double> composite_luma(const rgba_image& img) {
  std::vector<double> rgb = composite_white(img);
  std::vector<double> luma(img.pixel_count());
  for (size_t i = 0; i < luma.size(); i++)
    luma[i] = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
  return luma;
}

}  // namespace

double psnr(const rgba_image& a, const rgba_image& b) {
  if (a.width != b.width || a.height != b.height)
    throw error("DimensionMismatch", "psnr requires equal dimensions");
  std::vector<double> ca = composite_white(a);
  std::vector<double> cb = composite_white(b);
  double sq = simd::active().sum_sq_diff(ca.data(), cb.data(), ca.size());
  double mse = sq / static_cast<double>(ca.size());
  if (mse <= 0) return psnr_cap_db;
  return std::min(psnr_cap_db, 10.0 * std::log10(255.0 * 255.0 / mse));
}

namespace {

// Horizontal then vertical pass with an 11-tap Gaussian, valid region only.
// Output has size (w - 10) x (h - 10).
std::vector<double> gaussian_valid(const std::vector<double>& img, int w, int h,
                                   const double* kernel, int radius, int& w_out, int& h_out) {
  int taps = 2 * radius + 1;
  w_out = w - 2 * radius;
  h_out = h - 2 * radius;
  std::vector<double> horiz(static_cast<size_t>(w_out) * h);
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w_out; x++) {
      double s = 0;
      for (int k = 0; k < taps; k++) s += kernel[k] * img[static_cast<size_t>(y) * w + x + k];
      horiz[static_cast<size_t>(y) * w_out + x] = s;
    }
  std::vector<double> out(static_cast<size_t>(w_out) * h_out);
  for (int y = 0; y < h_out; y++)
    for (int x = 0; x < w_out; x++) {
      double s = 0;
      for (int k = 0; k < taps; k++) s += kernel[k] * horiz[static_cast<size_t>(y + k) * w_out + x];
      out[static_cast<size_t>(y) * w_out + x] = s;
    }
  return out;
}

}  // namespace

double ssim(const rgba_image& a, const rgba_image& b) {
  if (a.width != b.width || a.height != b.height)
    throw error("DimensionMismatch", "ssim requires equal dimensions");
  const int radius = 5;
  if (a.width < 2 * radius + 1 || a.height < 2 * radius + 1)
    throw error("TooSmall", "ssim requires min side >= 11");

  double kernel[11];
  double ksum = 0;
  const double sigma = 1.5;
  for (int i = 0; i < 11; i++) {
    double d = i - radius;
    kernel[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    ksum += kernel[i];
  }
  for (double& k : kernel) k /= ksum;

  std::vector<double> x = composite_luma(a);
  std::vector<double> y = composite_luma(b);
  size_t n = x.size();
  std::vector<double> xx(n), yy(n), xy(n);
  for (size_t i = 0; i < n; i++) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }

  int w_out, h_out;
  auto mu_x = gaussian_valid(x, a.width, a.height, kernel, radius, w_out, h_out);
  auto mu_y = gaussian_valid(y, a.width, a.height, kernel, radius, w_out, h_out);
  auto m_xx = gaussian_valid(xx, a.width, a.height, kernel, radius, w_out, h_out);
  auto m_yy = gaussian_valid(yy, a.width, a.height, kernel, radius, w_out, h_out);
  auto m_xy = gaussian_valid(xy, a.width, a.height, kernel, radius, w_out, h_out);

  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  double total = 0;
  size_t count = mu_x.size();
  for (size_t i = 0; i < count; i++) {
    double var_x = m_xx[i] - mu_x[i] * mu_x[i];
    double var_y = m_yy[i] - mu_y[i] * mu_y[i];
    double cov = m_xy[i] - mu_x[i] * mu_y[i];
    double num = (2 * mu_x[i] * mu_y[i] + c1) * (2 * cov + c2);
    double den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + c1) * (var_x + var_y + c2);
    total += num / den;
  }
  return total / static_cast<double>(count);
}

double normal_roughness(const tri_mesh& mesh, int k_neighbors) {
  if (mesh.faces.empty()) throw error("DegenerateMesh", "mesh has no faces");
  if (k_neighbors < 3) throw error("BadParameter", "k_neighbors must be >= 3");

  std::vector<vec3> centroids;
  std::vector<vec3> normals;
  centroids.reserve(mesh.faces.size());
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    vec3 n = face_normal(mesh, f);
    if (length_sq(n) < 0.5) continue;  // zero-area face
    centroids.push_back(face_centroid(mesh, f));
    normals.push_back(n);
  }
  if (centroids.size() < static_cast<size_t>(k_neighbors) + 1)
    throw error("DegenerateMesh", "not enough non-degenerate faces");

  kd_tree tree(centroids);
  std::vector<size_t> idx;
  std::vector<double> d2;
  double total = 0;
  for (size_t i = 0; i < centroids.size(); i++) {
    tree.knn(centroids[i], static_cast<size_t>(k_neighbors) + 1, idx, d2);
    vec3 mean{0, 0, 0};
    int used = 0;
    for (size_t j = 0; j < idx.size() && used < k_neighbors; j++) {
      if (idx[j] == i) continue;  // skip self
      mean += normals[idx[j]];
      used++;
    }
    if (used == 0) continue;
    if (length_sq(mean) < 1e-24) {
      total += pi / 2.0;  // neighborhood normals cancel out
      continue;
    }
    total += angle_between(normals[i], mean);
  }
  return total / static_cast<double>(centroids.size());
}

}  // namespace cue3d
