#include "cue3d/render.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "cue3d/error.hpp"
#include "cue3d/records.hpp"

#include "json.hpp"

namespace cue3d {

namespace {

struct clip_vertex {
  vec3 cam;    // camera space
  vec3 world;  // world space
  vec3 color;
};

// Sutherland-Hodgman against the camera plane z = eps; world position and
// color interpolate linearly (world-to-camera is affine).
std::vector<clip_vertex> clip_near(const std::vector<clip_vertex>& poly, double eps) {
  std::vector<clip_vertex> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; i++) {
    const clip_vertex& a = poly[i];
    const clip_vertex& b = poly[(i + 1) % n];
    bool ain = a.cam.z > eps, bin = b.cam.z > eps;
    if (ain) out.push_back(a);
    if (ain != bin) {
      double s = (eps - a.cam.z) / (b.cam.z - a.cam.z);
      out.push_back({a.cam + (b.cam - a.cam) * s, a.world + (b.world - a.world) * s,
                     a.color + (b.color - a.color) * s});
    }
  }
  return out;
}

double edge_fn(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

}  // namespace

render_output rasterize(const tri_mesh& mesh, const camera_model& cam) {
  cam.validate();
  render_output out;
  out.color = rgba_image(cam.width, cam.height, {0, 0, 0, 0});
  out.depth = depth_map(cam.width, cam.height);
  if (mesh.faces.empty()) return out;

  const bool persp = cam.projection == camera_model::projection_kind::perspective;
  const double f = cam.focal_px();
  const double cx = cam.width / 2.0, cy = cam.height / 2.0;
  const rigid_transform cam_to_world = cam.world_to_camera.inverse();
  const vec3 cam_pos = cam_to_world.translation;
  const vec3 forward = cam.forward_axis();
  const vec3 gray{0.7, 0.7, 0.7};

  auto project = [&](const vec3& p, double& u, double& v) {
    if (persp) {
      u = cx + f * p.x / p.z;
      v = cy + f * p.y / p.z;
    } else {
      u = cx + f * p.x;
      v = cy + f * p.y;
    }
  };

  std::vector<clip_vertex> poly, clipped;
  for (size_t face = 0; face < mesh.faces.size(); face++) {
    const auto& tri = mesh.faces[face];
    poly.clear();
    for (int k = 0; k < 3; k++) {
      const vec3& w = mesh.vertices[tri[k]];
      poly.push_back({cam.world_to_camera.apply(w), w,
                      mesh.has_colors() ? mesh.vertex_colors[tri[k]] : gray});
    }
    if (persp) {
      clipped = clip_near(poly, 1e-9);
    } else {
      clipped = poly;
    }
    if (clipped.size() < 3) continue;

    // Fan-triangulate the clipped polygon (at most 4 vertices).
    for (size_t fan = 2; fan < clipped.size(); fan++) {
      const clip_vertex& a = clipped[0];
      const clip_vertex& b = clipped[fan - 1];
      const clip_vertex& c = clipped[fan];

      double u0, v0, u1, v1, u2, v2;
      project(a.cam, u0, v0);
      project(b.cam, u1, v1);
      project(c.cam, u2, v2);
      double area2 = edge_fn(u0, v0, u1, v1, u2, v2);
      if (area2 == 0) continue;
      double sign = area2 > 0 ? 1.0 : -1.0;

      vec3 n_world = cross(b.world - a.world, c.world - a.world);
      if (length_sq(n_world) == 0) continue;

      int px0 = std::max(0, static_cast<int>(std::floor(std::min({u0, u1, u2}) - 1.0)));
      int px1 = std::min(cam.width - 1, static_cast<int>(std::ceil(std::max({u0, u1, u2}))));
      int py0 = std::max(0, static_cast<int>(std::floor(std::min({v0, v1, v2}) - 1.0)));
      int py1 = std::min(cam.height - 1, static_cast<int>(std::ceil(std::max({v0, v1, v2}))));

      // Precomputed triangle basis for barycentric color lookup.
      vec3 e1 = b.world - a.world, e2 = c.world - a.world;
      double d00 = dot(e1, e1), d01 = dot(e1, e2), d11 = dot(e2, e2);
      double gram = d00 * d11 - d01 * d01;

      for (int py = py0; py <= py1; py++) {
        for (int px = px0; px <= px1; px++) {
          double sx = px + 0.5, sy = py + 0.5;
          if (sign * edge_fn(u0, v0, u1, v1, sx, sy) < 0) continue;
          if (sign * edge_fn(u1, v1, u2, v2, sx, sy) < 0) continue;
          if (sign * edge_fn(u2, v2, u0, v0, sx, sy) < 0) continue;

          // Ray through the pixel center, same construction the
          // back-projection uses.
          vec3 origin, dir;
          if (persp) {
            vec3 dir_cam{(sx - cx) / f, (sy - cy) / f, 1.0};
            origin = cam_pos;
            dir = normalized(cam_to_world.rotation * dir_cam);
          } else {
            vec3 o_cam{(sx - cx) / f, (sy - cy) / f, 0.0};
            origin = cam_to_world.apply(o_cam);
            dir = forward;
          }
          double denom = dot(dir, n_world);
          if (denom == 0) continue;
          double t = dot(a.world - origin, n_world) / denom;
          if (t <= cam.near || t >= cam.far) continue;

          float& zslot = out.depth.at(px, py);
          if (t >= zslot) continue;
          zslot = static_cast<float>(t);

          vec3 hit = origin + dir * t;
          vec3 rel = hit - a.world;
          double b1 = 0, b2 = 0;
          if (gram != 0) {
            double r0 = dot(rel, e1), r1 = dot(rel, e2);
            b1 = (d11 * r0 - d01 * r1) / gram;
            b2 = (d00 * r1 - d01 * r0) / gram;
          }
          double b0 = 1.0 - b1 - b2;
          vec3 base = a.color * b0 + b.color * b1 + c.color * b2;

          vec3 light = persp ? normalized(cam_pos - hit) : -dir;
          double lambert = std::abs(dot(normalized(n_world), light));
          auto to_byte = [](double x) {
            return static_cast<uint8_t>(std::clamp(x * 255.0 + 0.5, 0.0, 255.0));
          };
          out.color.at(px, py) = {to_byte(base.x * lambert), to_byte(base.y * lambert),
                                  to_byte(base.z * lambert), 255};
        }
      }
    }
  }
  return out;
}

std::vector<camera_model> view_ring(double center_dist, double elevation_a, double elevation_b,
                                    int resolution, double fov_y) {
  std::vector<camera_model> cams;
  cams.reserve(16);
  for (double el : {elevation_a, elevation_b}) {
    for (int k = 0; k < 8; k++) {
      double az = k * (pi / 4.0);
      vec3 pos{center_dist * std::cos(el) * std::sin(az), center_dist * std::sin(el),
               center_dist * std::cos(el) * std::cos(az)};
      cams.push_back(camera_model::look_at(pos, {0, 0, 0}, {0, 1, 0},
                                           camera_model::projection_kind::perspective, fov_y,
                                           resolution, resolution, 0.05, center_dist * 10.0));
    }
  }
  return cams;
}

point_cloud backproject(const depth_map& depth, const camera_model& cam) {
  if (depth.width != cam.width || depth.height != cam.height)
    throw error("DimensionMismatch", "depth map and camera resolution differ");
  point_cloud cloud;
  for (int y = 0; y < depth.height; y++)
    for (int x = 0; x < depth.width; x++) {
      if (!depth.hit(x, y)) continue;
      ray r = cam.pixel_ray(x + 0.5, y + 0.5);
      cloud.points.push_back(r.origin + r.dir * static_cast<double>(depth.at(x, y)));
    }
  return cloud;
}

void write_depth(const depth_map& depth, const camera_model& cam, const std::string& path) {
  {
    std::ofstream header(path + ".json");
    if (!header) throw error("IoError", "cannot write " + path + ".json");
    nlohmann::json j;
    j["width"] = depth.width;
    j["height"] = depth.height;
    j["camera"] = to_json(cam);
    header << j.dump(2) << "\n";
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("IoError", "cannot write " + path);
  out.write(reinterpret_cast<const char*>(depth.depth.data()),
            static_cast<std::streamsize>(depth.depth.size() * sizeof(float)));
}

depth_map read_depth(const std::string& path, camera_model& cam_out) {
  std::ifstream header(path + ".json");
  if (!header) throw error("IoError", "cannot open " + path + ".json");
  nlohmann::json j;
  header >> j;
  cam_out = camera_from_json(j.at("camera"));
  depth_map depth(j.at("width").get<int>(), j.at("height").get<int>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("IoError", "cannot open " + path);
  in.read(reinterpret_cast<char*>(depth.depth.data()),
          static_cast<std::streamsize>(depth.depth.size() * sizeof(float)));
  if (!in) throw error("IoError", "truncated depth file " + path);
  return depth;
}

}  // namespace cue3d
