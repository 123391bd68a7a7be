#include "cue3d/meshops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cue3d/bvh.hpp"
#include "cue3d/error.hpp"
#include "cue3d/rng.hpp"

namespace cue3d {

tri_mesh normalize(const tri_mesh& mesh) {
  if (mesh.vertices.empty()) throw error("DegenerateMesh", "mesh has no vertices");
  vec3 center{0, 0, 0};
  for (const auto& v : mesh.vertices) center += v;
  center = center / static_cast<double>(mesh.vertices.size());

  double max_r = 0;
  for (const auto& v : mesh.vertices) max_r = std::max(max_r, length(v - center));
  if (max_r <= 0) throw error("DegenerateMesh", "all vertices coincide");

  tri_mesh out = mesh;
  double inv = 1.0 / max_r;
  for (auto& v : out.vertices) v = (v - center) * inv;
  return out;
}

// Fibonacci sphere point set: deterministic, near-uniform directions.
static std::vector<vec3> sphere_directions(int n) {
  std::vector<vec3> dirs(n);
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; i++) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    dirs[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  return dirs;
}

tri_mesh remove_internal_surface(const tri_mesh& mesh, int rays_per_face, double epsilon) {
  if (rays_per_face < 16) throw error("BadParameter", "rays_per_face must be >= 16");
  if (mesh.faces.empty()) return mesh;

  tri_bvh bvh(mesh);
  std::vector<vec3> dirs = sphere_directions(rays_per_face);

  tri_mesh kept;
  kept.vertices = mesh.vertices;
  kept.vertex_colors = mesh.vertex_colors;
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    vec3 c = face_centroid(mesh, f);
    vec3 n = face_normal(mesh, f);
    bool escaped = false;
    for (int side = 0; side < 2 && !escaped; side++) {
      vec3 origin = side == 0 ? c + n * epsilon : c - n * epsilon;
      for (const auto& d : dirs) {
        if (!bvh.any_hit(origin, d, 1e-9, std::numeric_limits<double>::infinity())) {
          escaped = true;
          break;
        }
      }
    }
    if (escaped) kept.faces.push_back(mesh.faces[f]);
  }
  return prune_unreferenced(kept);
}

point_cloud sample_surface(const tri_mesh& mesh, size_t n, uint64_t seed) {
  if (n < 1) throw error("BadParameter", "sample count must be >= 1");
  std::vector<double> cumulative(mesh.faces.size());
  double total = 0;
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    total += face_area(mesh, f);
    cumulative[f] = total;
  }
  if (mesh.faces.empty() || total <= 0)
    throw error("DegenerateMesh", "mesh has no surface area to sample");

  rng random(seed, "sample_surface");
  point_cloud cloud;
  cloud.points.reserve(n);
  cloud.normals.reserve(n);
  for (size_t i = 0; i < n; i++) {
    double pick = random.uniform() * total;
    size_t f = static_cast<size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    if (f >= mesh.faces.size()) f = mesh.faces.size() - 1;
    const auto& tri = mesh.faces[f];
    double u = random.uniform(), v = random.uniform();
    if (u + v > 1) {  // fold into the triangle
      u = 1 - u;
      v = 1 - v;
    }
    const vec3& a = mesh.vertices[tri[0]];
    const vec3& b = mesh.vertices[tri[1]];
    const vec3& c = mesh.vertices[tri[2]];
    cloud.points.push_back(a + (b - a) * u + (c - a) * v);
    cloud.normals.push_back(face_normal(mesh, f));
  }
  return cloud;
}

namespace {

// Appends the faces of src whose centroid satisfies pred.
template <typename Pred>
void take_faces(tri_mesh& dst, const tri_mesh& src, Pred pred, size_t& taken) {
  tri_mesh part;
  part.vertices = src.vertices;
  part.vertex_colors = src.vertex_colors;
  for (size_t f = 0; f < src.faces.size(); f++)
    if (pred(face_centroid(src, f))) part.faces.push_back(src.faces[f]);
  taken += part.faces.size();
  if (!part.faces.empty()) append_mesh(dst, prune_unreferenced(part));
}

int axis_of(half_axis a) {
  switch (a) {
    case half_axis::left_right: return 0;
    case half_axis::top_bottom: return 1;
    default: return 2;  // front_back
  }
}

}  // namespace

tri_mesh cutmix(const tri_mesh& mesh_a, const tri_mesh& mesh_b, const cutmix_spec& spec) {
  tri_mesh out;
  size_t from_a = 0, from_b = 0;

  switch (spec.mix) {
    case cutmix_spec::kind::half_and_half: {
      int ax = axis_of(spec.axis);
      take_faces(out, mesh_a, [&](const vec3& c) { return c[ax] >= 0; }, from_a);
      take_faces(out, mesh_b, [&](const vec3& c) { return c[ax] < 0; }, from_b);
      break;
    }
    case cutmix_spec::kind::corner_cube: {
      if (!(spec.ratio >= 0.4 && spec.ratio <= 0.6))
        throw error("BadParameter", "corner cube ratio must be in [0.4, 0.6]");
      if (spec.corner_index < 0 || spec.corner_index > 7)
        throw error("BadParameter", "corner_index must be in 0..7");
      // Cube pinned at a corner of the [-1,1]^3 bounding cube, extending
      // inward with edge length ratio * 2.
      double edge = spec.ratio * 2.0;
      vec3 corner{(spec.corner_index & 1) ? 1.0 : -1.0, (spec.corner_index & 2) ? 1.0 : -1.0,
                  (spec.corner_index & 4) ? 1.0 : -1.0};
      // The cube extends from the pinned corner toward the origin.
      vec3 other = corner - vec3{corner.x > 0 ? edge : -edge, corner.y > 0 ? edge : -edge,
                                 corner.z > 0 ? edge : -edge};
      vec3 lo = min(corner, other);
      vec3 hi = max(corner, other);
      auto inside = [&](const vec3& c) {
        return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y && c.z >= lo.z &&
               c.z <= hi.z;
      };
      take_faces(out, mesh_a, [&](const vec3& c) { return !inside(c); }, from_a);
      take_faces(out, mesh_b, inside, from_b);
      break;
    }
    case cutmix_spec::kind::octant: {
      // Seeded assignment of each octant to one of the two sources.
      rng random(spec.seed, "cutmix_octant");
      std::array<bool, 8> use_b;
      for (auto& u : use_b) u = random.below(2) == 1;
      auto octant_of = [](const vec3& c) {
        return (c.x >= 0 ? 1 : 0) | (c.y >= 0 ? 2 : 0) | (c.z >= 0 ? 4 : 0);
      };
      take_faces(out, mesh_a, [&](const vec3& c) { return !use_b[octant_of(c)]; }, from_a);
      take_faces(out, mesh_b, [&](const vec3& c) { return use_b[octant_of(c)]; }, from_b);
      break;
    }
  }

  if (from_a == 0 || from_b == 0)
    throw error("EmptyResult", "one source contributed no faces");
  return out;
}

tri_mesh make_box() {
  tri_mesh box;
  box.vertices = {{-0.5, -0.5, -0.5}, {0.5, -0.5, -0.5}, {0.5, 0.5, -0.5}, {-0.5, 0.5, -0.5},
                  {-0.5, -0.5, 0.5},  {0.5, -0.5, 0.5},  {0.5, 0.5, 0.5},  {-0.5, 0.5, 0.5}};
  box.faces = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
               {2, 3, 7}, {2, 7, 6}, {1, 2, 6}, {1, 6, 5}, {3, 0, 4}, {3, 4, 7}};
  return box;
}

tri_mesh make_icosphere(int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  tri_mesh mesh;
  mesh.vertices = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                   {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : mesh.vertices) v = normalized(v);
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; s++) {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> midpoint;
    auto mid = [&](uint32_t a, uint32_t b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      uint32_t idx = static_cast<uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back(normalized((mesh.vertices[a] + mesh.vertices[b]) * 0.5));
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<uint32_t, 3>> faces;
    faces.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      uint32_t ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      faces.push_back({f[0], ab, ca});
      faces.push_back({f[1], bc, ab});
      faces.push_back({f[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(faces);
  }
  return mesh;
}

tri_mesh make_cylinder(int segments) {
  tri_mesh mesh;
  // Side rings at y = -0.5 and y = +0.5, radius 0.5, plus cap centers.
  for (int ring = 0; ring < 2; ring++) {
    double y = ring == 0 ? -0.5 : 0.5;
    for (int i = 0; i < segments; i++) {
      double a = 2.0 * pi * i / segments;
      mesh.vertices.push_back({0.5 * std::cos(a), y, 0.5 * std::sin(a)});
    }
  }
  uint32_t bottom_center = static_cast<uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back({0, -0.5, 0});
  uint32_t top_center = bottom_center + 1;
  mesh.vertices.push_back({0, 0.5, 0});

  uint32_t n = static_cast<uint32_t>(segments);
  for (uint32_t i = 0; i < n; i++) {
    uint32_t j = (i + 1) % n;
    mesh.faces.push_back({i, j, n + i});
    mesh.faces.push_back({j, n + j, n + i});
    mesh.faces.push_back({bottom_center, j, i});
    mesh.faces.push_back({top_center, n + i, n + j});
  }
  return mesh;
}

tri_mesh gen_primitive_assembly(int n_parts, uint64_t seed) {
  if (n_parts < 1) throw error("BadParameter", "n_parts must be >= 1");
  rng random(seed, "primitive_assembly");
  tri_mesh assembly;
  for (int part = 0; part < n_parts; part++) {
    tri_mesh prim;
    switch (random.below(3)) {
      case 0: prim = make_box(); break;
      case 1: prim = make_icosphere(2); break;
      default: prim = make_cylinder(24); break;
    }
    // Anisotropic scale, random rotation, offset inside the unit sphere.
    vec3 scale{random.uniform(0.15, 0.5), random.uniform(0.15, 0.5), random.uniform(0.15, 0.5)};
    vec3 axis{random.normal(), random.normal(), random.normal()};
    if (length(axis) < 1e-9) axis = {1, 0, 0};
    mat3 rot = rotation_axis_angle(normalized(axis), random.uniform(0, 2 * pi));
    vec3 offset{random.uniform(-0.5, 0.5), random.uniform(-0.5, 0.5), random.uniform(-0.5, 0.5)};

    vec3 color{random.uniform(0.2, 1.0), random.uniform(0.2, 1.0), random.uniform(0.2, 1.0)};
    prim.vertex_colors.assign(prim.vertices.size(), color);
    for (auto& v : prim.vertices) {
      v = vec3{v.x * scale.x, v.y * scale.y, v.z * scale.z};
      v = rot * v + offset;
    }
    append_mesh(assembly, prim);
  }
  return assembly;
}

}  // namespace cue3d
