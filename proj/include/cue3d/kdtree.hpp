#pragma once

#include <cstdint>
#include <vector>

#include "cue3d/math.hpp"

namespace cue3d {

// Exact nearest-neighbor index over 3D points. Points are reordered at
// build time so each leaf is a contiguous SoA range that the SIMD scan
// kernel can sweep. Queries return exact nearest neighbors (standard
// axis-distance pruning, no approximation).
class kd_tree {
 public:
  explicit kd_tree(const std::vector<vec3>& points, int leaf_size = 24);

  size_t size() const { return xs_.size(); }

  // Index (into the original point array) of the exact nearest neighbor.
  size_t nearest(const vec3& query, double& dist_sq) const;
  double nearest_distance(const vec3& query) const;

  // k exact nearest neighbors, ascending by distance.
  void knn(const vec3& query, size_t k, std::vector<size_t>& indices,
           std::vector<double>& dists_sq) const;

 private:
  struct node {
    double split = 0;
    int32_t axis = -1;  // -1 marks a leaf
    uint32_t left = 0, right = 0;
    uint32_t begin = 0, end = 0;
  };

  uint32_t build(std::vector<uint32_t>& order, const std::vector<vec3>& pts, uint32_t begin,
                 uint32_t end, int leaf_size);
  void nearest_rec(uint32_t node_idx, const vec3& q, double& best_d2, size_t& best_i) const;

  std::vector<node> nodes_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<uint32_t> original_;
};

}  // namespace cue3d
