#include "cue3d/mesh.hpp"

namespace cue3d {

bool valid_topology(const tri_mesh& mesh) {
  uint32_t n = static_cast<uint32_t>(mesh.vertices.size());
  for (const auto& f : mesh.faces) {
    if (f[0] >= n || f[1] >= n || f[2] >= n) return false;
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return false;
  }
  if (!mesh.vertex_colors.empty() && mesh.vertex_colors.size() != mesh.vertices.size())
    return false;
  return true;
}

void append_mesh(tri_mesh& dst, const tri_mesh& src) {
  bool keep_colors = (dst.vertices.empty() || dst.has_colors()) && src.has_colors();
  uint32_t base = static_cast<uint32_t>(dst.vertices.size());
  dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
  if (keep_colors) {
    dst.vertex_colors.insert(dst.vertex_colors.end(), src.vertex_colors.begin(),
                             src.vertex_colors.end());
  } else {
    dst.vertex_colors.clear();
  }
  dst.faces.reserve(dst.faces.size() + src.faces.size());
  for (const auto& f : src.faces)
    dst.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

tri_mesh prune_unreferenced(const tri_mesh& mesh) {
  std::vector<uint32_t> remap(mesh.vertices.size(), UINT32_MAX);
  tri_mesh out;
  out.faces.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    std::array<uint32_t, 3> nf;
    for (int k = 0; k < 3; k++) {
      uint32_t v = f[k];
      if (remap[v] == UINT32_MAX) {
        remap[v] = static_cast<uint32_t>(out.vertices.size());
        out.vertices.push_back(mesh.vertices[v]);
        if (mesh.has_colors()) out.vertex_colors.push_back(mesh.vertex_colors[v]);
      }
      nf[k] = remap[v];
    }
    out.faces.push_back(nf);
  }
  return out;
}

tri_mesh transformed(const tri_mesh& mesh, const mat3& rotation, const vec3& translation) {
  tri_mesh out = mesh;
  for (auto& v : out.vertices) v = rotation * v + translation;
  return out;
}

}  // namespace cue3d
