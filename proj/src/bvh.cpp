#include "cue3d/bvh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cue3d {

bool ray_triangle(const vec3& origin, const vec3& dir, const vec3& v0, const vec3& e1,
                  const vec3& e2, double& t_out) {
  vec3 pvec = cross(dir, e2);
  double det = dot(e1, pvec);
  if (std::abs(det) < 1e-14) return false;
  double inv_det = 1.0 / det;
  vec3 tvec = origin - v0;
  double u = dot(tvec, pvec) * inv_det;
  if (u < 0 || u > 1) return false;
  vec3 qvec = cross(tvec, e1);
  double v = dot(dir, qvec) * inv_det;
  if (v < 0 || u + v > 1) return false;
  t_out = dot(e2, qvec) * inv_det;
  return true;
}

namespace {

bool ray_box(const vec3& o, const vec3& inv_d, const vec3& lo, const vec3& hi, double t_min,
             double t_max) {
  for (int a = 0; a < 3; a++) {
    double t0 = (lo[a] - o[a]) * inv_d[a];
    double t1 = (hi[a] - o[a]) * inv_d[a];
    if (inv_d[a] < 0) std::swap(t0, t1);
    t_min = std::max(t_min, t0);
    t_max = std::min(t_max, t1);
    if (t_max < t_min) return false;
  }
  return true;
}

}  // namespace

tri_bvh::tri_bvh(const tri_mesh& mesh) {
  size_t n = mesh.faces.size();
  v0_.resize(n);
  e1_.resize(n);
  e2_.resize(n);
  centroids_.resize(n);
  for (size_t f = 0; f < n; f++) {
    const auto& t = mesh.faces[f];
    v0_[f] = mesh.vertices[t[0]];
    e1_[f] = mesh.vertices[t[1]] - v0_[f];
    e2_[f] = mesh.vertices[t[2]] - v0_[f];
    centroids_[f] = face_centroid(mesh, f);
  }
  if (n == 0) {
    nodes_.push_back({});
    return;
  }
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  nodes_.reserve(2 * n);
  build(order, 0, static_cast<uint32_t>(n));
  // Reorder triangle data to leaf order.
  std::vector<vec3> v0(n), e1(n), e2(n);
  for (size_t i = 0; i < n; i++) {
    v0[i] = v0_[order[i]];
    e1[i] = e1_[order[i]];
    e2[i] = e2_[order[i]];
  }
  v0_ = std::move(v0);
  e1_ = std::move(e1);
  e2_ = std::move(e2);
  face_of_.assign(order.begin(), order.end());
  centroids_.clear();
  centroids_.shrink_to_fit();
}

uint32_t tri_bvh::build(std::vector<uint32_t>& order, uint32_t begin, uint32_t end) {
  uint32_t idx = static_cast<uint32_t>(nodes_.size());
  nodes_.push_back({});

  vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  vec3 hi = -lo;
  for (uint32_t i = begin; i < end; i++) {
    uint32_t f = order[i];
    vec3 a = v0_[f], b = v0_[f] + e1_[f], c = v0_[f] + e2_[f];
    lo = min(lo, min(a, min(b, c)));
    hi = max(hi, max(a, max(b, c)));
  }
  nodes_[idx].lo = lo;
  nodes_[idx].hi = hi;

  const uint32_t leaf_size = 4;
  if (end - begin <= leaf_size) {
    nodes_[idx].begin = begin;
    nodes_[idx].count = end - begin;
    return idx;
  }

  vec3 extent = hi - lo;
  int axis = 0;
  if (extent.y > extent.x) axis = 1;
  if (extent.z > extent[axis]) axis = 2;
  uint32_t mid = (begin + end) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                   [&](uint32_t a, uint32_t b) { return centroids_[a][axis] < centroids_[b][axis]; });

  // Internal node: count stays 0, begin doubles as the right-child index.
  uint32_t left = build(order, begin, mid);
  uint32_t right = build(order, mid, end);
  nodes_[idx].left = left;
  nodes_[idx].begin = right;
  nodes_[idx].count = 0;
  return idx;
}

bool tri_bvh::intersect_leaf(const node& nd, const vec3& o, const vec3& d, double t_min,
                             double& t_max, size_t& face_out, bool any) const {
  bool hit = false;
  for (uint32_t i = nd.begin; i < nd.begin + nd.count; i++) {
    double t;
    if (ray_triangle(o, d, v0_[i], e1_[i], e2_[i], t) && t > t_min && t < t_max) {
      hit = true;
      face_out = face_of_[i];
      if (any) return true;
      t_max = t;
    }
  }
  return hit;
}

bool tri_bvh::any_hit(const vec3& origin, const vec3& dir, double t_min, double t_max) const {
  if (v0_.empty()) return false;
  vec3 inv_d{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
  std::vector<uint32_t> stack{0};
  size_t face;
  while (!stack.empty()) {
    const node& nd = nodes_[stack.back()];
    stack.pop_back();
    if (!ray_box(origin, inv_d, nd.lo, nd.hi, t_min, t_max)) continue;
    if (nd.count > 0) {
      double tm = t_max;
      if (intersect_leaf(nd, origin, dir, t_min, tm, face, true)) return true;
    } else {
      stack.push_back(nd.left);
      stack.push_back(nd.begin);
    }
  }
  return false;
}

bool tri_bvh::first_hit(const vec3& origin, const vec3& dir, double t_min, double t_max,
                        double& t_out, size_t& face_out) const {
  if (v0_.empty()) return false;
  vec3 inv_d{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
  std::vector<uint32_t> stack{0};
  bool hit = false;
  while (!stack.empty()) {
    const node& nd = nodes_[stack.back()];
    stack.pop_back();
    if (!ray_box(origin, inv_d, nd.lo, nd.hi, t_min, t_max)) continue;
    if (nd.count > 0) {
      size_t face;
      if (intersect_leaf(nd, origin, dir, t_min, t_max, face, false)) {
        hit = true;
        face_out = face;
      }
    } else {
      stack.push_back(nd.left);
      stack.push_back(nd.begin);
    }
  }
  if (hit) t_out = t_max;
  return hit;
}

}  // namespace cue3d
