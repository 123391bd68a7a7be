#include "cue3d/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "cue3d/error.hpp"
#include "cue3d/simd.hpp"

namespace cue3d {

kd_tree::kd_tree(const std::vector<vec3>& points, int leaf_size) {
  if (points.empty()) throw error("EmptyCloud", "kd_tree requires at least one point");
  std::vector<uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  nodes_.reserve(2 * points.size() / std::max(leaf_size, 1) + 2);
  build(order, points, 0, static_cast<uint32_t>(points.size()), std::max(leaf_size, 1));
  xs_.resize(points.size());
  ys_.resize(points.size());
  zs_.resize(points.size());
  original_ = order;
  for (size_t i = 0; i < points.size(); i++) {
    const vec3& p = points[order[i]];
    xs_[i] = p.x;
    ys_[i] = p.y;
    zs_[i] = p.z;
  }
}

uint32_t kd_tree::build(std::vector<uint32_t>& order, const std::vector<vec3>& pts,
                        uint32_t begin, uint32_t end, int leaf_size) {
  uint32_t idx = static_cast<uint32_t>(nodes_.size());
  nodes_.push_back({});
  if (end - begin <= static_cast<uint32_t>(leaf_size)) {
    nodes_[idx].begin = begin;
    nodes_[idx].end = end;
    return idx;
  }

  vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  vec3 hi = -lo;
  for (uint32_t i = begin; i < end; i++) {
    lo = min(lo, pts[order[i]]);
    hi = max(hi, pts[order[i]]);
  }
  vec3 extent = hi - lo;
  int axis = 0;
  if (extent.y > extent.x) axis = 1;
  if (extent.z > extent[axis]) axis = 2;
  if (extent[axis] <= 0) {  // all points coincide on every axis: make a leaf
    nodes_[idx].begin = begin;
    nodes_[idx].end = end;
    return idx;
  }

  uint32_t mid = (begin + end) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                   [&](uint32_t a, uint32_t b) { return pts[a][axis] < pts[b][axis]; });
  nodes_[idx].axis = axis;
  nodes_[idx].split = pts[order[mid]][axis];
  nodes_[idx].left = build(order, pts, begin, mid, leaf_size);
  nodes_[idx].right = build(order, pts, mid, end, leaf_size);
  return idx;
}

void kd_tree::nearest_rec(uint32_t node_idx, const vec3& q, double& best_d2,
                          size_t& best_i) const {
  const node& nd = nodes_[node_idx];
  if (nd.axis < 0) {
    if (nd.end == nd.begin) return;
    double d2;
    size_t local = simd::active().nn_scan(q.x, q.y, q.z, xs_.data() + nd.begin,
                                          ys_.data() + nd.begin, zs_.data() + nd.begin,
                                          nd.end - nd.begin, d2);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_i = nd.begin + local;
    }
    return;
  }
  double delta = q[nd.axis] - nd.split;
  uint32_t near_child = delta < 0 ? nd.left : nd.right;
  uint32_t far_child = delta < 0 ? nd.right : nd.left;
  nearest_rec(near_child, q, best_d2, best_i);
  if (delta * delta < best_d2) nearest_rec(far_child, q, best_d2, best_i);
}

size_t kd_tree::nearest(const vec3& query, double& dist_sq) const {
  double best_d2 = std::numeric_limits<double>::infinity();
  size_t best_i = 0;
  nearest_rec(0, query, best_d2, best_i);
  dist_sq = best_d2;
  return original_[best_i];
}

double kd_tree::nearest_distance(const vec3& query) const {
  double d2;
  nearest(query, d2);
  return std::sqrt(d2);
}

void kd_tree::knn(const vec3& query, size_t k, std::vector<size_t>& indices,
                  std::vector<double>& dists_sq) const {
  k = std::min(k, size());
  // (distance², reordered index) max-heap of the best k so far.
  std::priority_queue<std::pair<double, size_t>> heap;
  // Iterative traversal, near side first.
  std::vector<std::pair<uint32_t, double>> stack;  // node, squared axis bound
  stack.push_back({0, 0.0});
  while (!stack.empty()) {
    auto [node_idx, bound] = stack.back();
    stack.pop_back();
    if (heap.size() == k && bound >= heap.top().first) continue;
    const node& nd = nodes_[node_idx];
    if (nd.axis < 0) {
      for (uint32_t i = nd.begin; i < nd.end; i++) {
        double dx = xs_[i] - query.x, dy = ys_[i] - query.y, dz = zs_[i] - query.z;
        double d2 = dx * dx + dy * dy + dz * dz;
        if (heap.size() < k) {
          heap.push({d2, i});
        } else if (d2 < heap.top().first) {
          heap.pop();
          heap.push({d2, i});
        }
      }
      continue;
    }
    double delta = query[nd.axis] - nd.split;
    uint32_t near_child = delta < 0 ? nd.left : nd.right;
    uint32_t far_child = delta < 0 ? nd.right : nd.left;
    stack.push_back({far_child, delta * delta});
    stack.push_back({near_child, bound});
  }
  indices.resize(heap.size());
  dists_sq.resize(heap.size());
  for (size_t i = heap.size(); i-- > 0;) {
    indices[i] = original_[heap.top().second];
    dists_sq[i] = heap.top().first;
    heap.pop();
  }
}

}  // namespace cue3d
