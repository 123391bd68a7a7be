#pragma once

#include <cstdint>

#include "cue3d/cloud.hpp"
#include "cue3d/mesh.hpp"

namespace cue3d {

enum class half_axis { front_back, left_right, top_bottom };  // z, x, y split planes

struct cutmix_spec {
  enum class kind { half_and_half, corner_cube, octant };
  kind mix = kind::half_and_half;
  half_axis axis = half_axis::left_right;  // half_and_half
  double ratio = 0.5;                      // corner_cube, in [0.4, 0.6]
  int corner_index = 0;                    // corner_cube, 0..7
  uint64_t seed = 0;                       // octant source assignment
};

// Recenters the vertex centroid to the origin and scales so the farthest
// vertex sits on the unit sphere.
tri_mesh normalize(const tri_mesh& mesh);

// Keeps a face iff at least one of rays_per_face rays, cast from both
// sides of its centroid (offset epsilon along the normal) in a fixed
// sphere-uniform direction set, escapes the mesh. Unreferenced vertices
// are pruned.
tri_mesh remove_internal_surface(const tri_mesh& mesh, int rays_per_face = 64,
                                 double epsilon = 1e-4);

// Area-uniform surface sampling with face normals; deterministic in seed.
point_cloud sample_surface(const tri_mesh& mesh, size_t n, uint64_t seed);

// Recombines whole faces of two normalized meshes by centroid tests:
// axis plane, corner-pinned cube, or octants. Vertex colors carry over.
tri_mesh cutmix(const tri_mesh& mesh_a, const tri_mesh& mesh_b, const cutmix_spec& spec);

// Primitive shapes, unit-sized around the origin.
tri_mesh make_box();
tri_mesh make_icosphere(int subdivisions);
tri_mesh make_cylinder(int segments);

// Random assembly of scaled/rotated/translated primitives inside the unit
// sphere; a desk-scale stand-in for procedurally generated shape datasets.
tri_mesh gen_primitive_assembly(int n_parts, uint64_t seed);

}  // namespace cue3d
