#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cue3d/camera.hpp"
#include "cue3d/cloud.hpp"
#include "cue3d/image.hpp"
#include "cue3d/mesh.hpp"

namespace cue3d {

// Per-pixel world-space distance along the view ray; no_hit where empty.
struct depth_map {
  static constexpr float no_hit = std::numeric_limits<float>::infinity();

  int width = 0;
  int height = 0;
  std::vector<float> depth;

  depth_map() = default;
  depth_map(int w, int h) : width(w), height(h), depth(size_t(w) * h, no_hit) {}

  float& at(int x, int y) { return depth[size_t(y) * width + x]; }
  float at(int x, int y) const { return depth[size_t(y) * width + x]; }
  bool hit(int x, int y) const { return std::isfinite(at(x, y)); }
};

struct render_output {
  rgba_image color;
  depth_map depth;
};

// Z-buffered rasterization. A pixel is covered when its center falls
// inside a projected triangle whose ray distance lies in (near, far);
// shading is per-vertex color (0.7 gray fallback) times a Lambertian
// headlight term. Background pixels have alpha 0.
render_output rasterize(const tri_mesh& mesh, const camera_model& cam);

// The 16-view protocol: 8 uniform azimuths (45 degree spacing) at each of
// two elevations, all aimed at the origin.
std::vector<camera_model> view_ring(double center_dist, double elevation_a, double elevation_b,
                                    int resolution = 512, double fov_y = radians(40.0));

// One world-space point per hit pixel, unprojected through the camera.
point_cloud backproject(const depth_map& depth, const camera_model& cam);

// Depth sidecar: raw little-endian float32 at <path>, JSON header
// (width, height, camera) at <path>.json.
void write_depth(const depth_map& depth, const camera_model& cam, const std::string& path);
depth_map read_depth(const std::string& path, camera_model& cam_out);

}  // namespace cue3d
