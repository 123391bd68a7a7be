#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cue3d/math.hpp"

namespace cue3d {

// Indexed triangle mesh with optional per-vertex colors in [0,1].
struct tri_mesh {
  std::vector<vec3> vertices;
  std::vector<std::array<uint32_t, 3>> faces;
  std::vector<vec3> vertex_colors;  // empty or same length as vertices

  bool has_colors() const { return !vertex_colors.empty(); }
};

inline vec3 face_centroid(const tri_mesh& mesh, size_t f) {
  const auto& t = mesh.faces[f];
  return (mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
}

inline vec3 face_normal(const tri_mesh& mesh, size_t f) {
  const auto& t = mesh.faces[f];
  return normalized(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                          mesh.vertices[t[2]] - mesh.vertices[t[0]]));
}

inline double face_area(const tri_mesh& mesh, size_t f) {
  const auto& t = mesh.faces[f];
  return 0.5 * length(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                            mesh.vertices[t[2]] - mesh.vertices[t[0]]));
}

// True when every face index is in range and no face repeats a vertex.
bool valid_topology(const tri_mesh& mesh);

// Appends another mesh's geometry, remapping indices; colors are kept if
// both parts carry them, dropped otherwise.
void append_mesh(tri_mesh& dst, const tri_mesh& src);

// Drops vertices referenced by no face and remaps face indices.
tri_mesh prune_unreferenced(const tri_mesh& mesh);

// Applies p -> r*p + t to all vertices.
tri_mesh transformed(const tri_mesh& mesh, const mat3& rotation, const vec3& translation);

}  // namespace cue3d
