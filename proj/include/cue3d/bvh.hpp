#pragma once

#include <cstdint>
#include <vector>

#include "cue3d/mesh.hpp"

namespace cue3d {

// AABB tree over mesh triangles for ray queries. Triangles are copied out
// of the mesh at build time; the tree is immutable and safe to share
// across threads.
class tri_bvh {
 public:
  explicit tri_bvh(const tri_mesh& mesh);

  // True if the ray hits any triangle with parameter t in (t_min, t_max).
  bool any_hit(const vec3& origin, const vec3& dir, double t_min, double t_max) const;

  // Nearest hit in (t_min, t_max); false if none.
  bool first_hit(const vec3& origin, const vec3& dir, double t_min, double t_max,
                 double& t_out, size_t& face_out) const;

 private:
  struct node {
    vec3 lo, hi;
    uint32_t left = 0;              // internal nodes: left child
    uint32_t begin = 0, count = 0;  // leaf when count > 0; else begin = right child
  };

  uint32_t build(std::vector<uint32_t>& order, uint32_t begin, uint32_t end);
  bool intersect_leaf(const node& nd, const vec3& o, const vec3& d, double t_min, double& t_max,
                      size_t& face_out, bool any) const;

  std::vector<node> nodes_;
  std::vector<uint32_t> face_of_;       // leaf order -> original face index
  std::vector<vec3> v0_, e1_, e2_;      // triangle data in leaf order
  std::vector<vec3> centroids_;         // build-time only
};

// Moller-Trumbore; hits with |det| below 1e-14 are treated as misses.
bool ray_triangle(const vec3& origin, const vec3& dir, const vec3& v0, const vec3& e1,
                  const vec3& e2, double& t_out);

}  // namespace cue3d
