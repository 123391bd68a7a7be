#pragma once

#include <vector>

#include "cue3d/math.hpp"

namespace cue3d {

// Sampled 3D points, optionally with unit normals (one per point).
struct point_cloud {
  std::vector<vec3> points;
  std::vector<vec3> normals;  // empty or same length as points

  bool has_normals() const { return !normals.empty(); }
  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

inline vec3 centroid(const point_cloud& cloud) {
  vec3 c{0, 0, 0};
  for (const auto& p : cloud.points) c += p;
  return cloud.empty() ? c : c / static_cast<double>(cloud.size());
}

inline point_cloud transformed(const point_cloud& cloud, const mat3& rotation,
                               const vec3& translation) {
  point_cloud out;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back(rotation * p + translation);
  out.normals.reserve(cloud.normals.size());
  for (const auto& n : cloud.normals) out.normals.push_back(rotation * n);
  return out;
}

// Reflection across the plane with unit normal n through point c.
inline point_cloud reflected(const point_cloud& cloud, const vec3& n, const vec3& c) {
  point_cloud out;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back(p - 2.0 * dot(p - c, n) * n);
  out.normals.reserve(cloud.normals.size());
  for (const auto& m : cloud.normals) out.normals.push_back(m - 2.0 * dot(m, n) * n);
  return out;
}

}  // namespace cue3d
