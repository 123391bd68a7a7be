#pragma once

#include "cue3d/error.hpp"
#include "cue3d/math.hpp"

namespace cue3d {

struct ray {
  vec3 origin;
  vec3 dir;  // unit length
};

// Perspective or orthographic camera. Camera space is x-right, y-down,
// z-forward; pose maps world to camera space. near/far bound the
// world-space distance along the view ray (the quantity depth maps store),
// so back-projection point = ray.origin + depth * ray.dir holds exactly.
struct camera_model {
  enum class projection_kind { perspective, orthographic };

  projection_kind projection = projection_kind::perspective;
  double fov_y = radians(40.0);  // perspective, radians
  double half_height = 1.0;      // orthographic, world units
  int width = 512, height = 512;
  double near = 0.05, far = 100.0;
  rigid_transform world_to_camera{mat3::identity(), {0, 0, 0}};

  void validate() const {
    if (width <= 0 || height <= 0) throw error("BadCamera", "resolution must be positive");
    if (near >= far) throw error("BadCamera", "near must be < far");
    if (projection == projection_kind::perspective) {
      if (near <= 0) throw error("BadCamera", "perspective near must be > 0");
      if (!(fov_y > 0 && fov_y < pi)) throw error("BadCamera", "fov_y must be in (0, pi)");
    } else if (half_height <= 0) {
      throw error("BadCamera", "orthographic half_height must be > 0");
    }
  }

  static camera_model look_at(const vec3& from, const vec3& at, const vec3& up,
                              projection_kind kind, double fov_or_half_height, int w, int h,
                              double near, double far) {
    vec3 forward = normalized(at - from);
    vec3 right = normalized(cross(forward, up));
    vec3 down = cross(forward, right);
    camera_model cam;
    cam.projection = kind;
    if (kind == projection_kind::perspective)
      cam.fov_y = fov_or_half_height;
    else
      cam.half_height = fov_or_half_height;
    cam.width = w;
    cam.height = h;
    cam.near = near;
    cam.far = far;
    mat3 r;
    r.m = {{{right.x, right.y, right.z}, {down.x, down.y, down.z}, {forward.x, forward.y, forward.z}}};
    cam.world_to_camera = {r, -(r * from)};
    cam.validate();
    return cam;
  }

  vec3 position() const { return world_to_camera.inverse().translation; }

  vec3 forward_axis() const {
    mat3 rt = transpose(world_to_camera.rotation);
    return {rt[0][2], rt[1][2], rt[2][2]};
  }

  // Pixels per world unit at the image plane (orthographic) or focal
  // length in pixels (perspective).
  double focal_px() const {
    if (projection == projection_kind::perspective)
      return (height / 2.0) / std::tan(fov_y / 2.0);
    return (height / 2.0) / half_height;
  }

  // Projects a world point to continuous pixel coordinates. Returns false
  // for points at or behind the camera plane (perspective only). zcam is
  // the camera-space forward coordinate.
  bool project(const vec3& p_world, double& u, double& v, double& zcam) const {
    vec3 p = world_to_camera.apply(p_world);
    zcam = p.z;
    double f = focal_px();
    if (projection == projection_kind::perspective) {
      if (p.z <= 0) return false;
      u = width / 2.0 + f * p.x / p.z;
      v = height / 2.0 + f * p.y / p.z;
    } else {
      u = width / 2.0 + f * p.x;
      v = height / 2.0 + f * p.y;
    }
    return true;
  }

  // World-space view ray through continuous pixel coordinates (u, v);
  // (x+0.5, y+0.5) is the center of pixel (x, y).
  ray pixel_ray(double u, double v) const {
    rigid_transform cam_to_world = world_to_camera.inverse();
    double f = focal_px();
    if (projection == projection_kind::perspective) {
      vec3 dir_cam{(u - width / 2.0) / f, (v - height / 2.0) / f, 1.0};
      return {cam_to_world.translation, normalized(cam_to_world.rotation * dir_cam)};
    }
    vec3 origin_cam{(u - width / 2.0) / f, (v - height / 2.0) / f, 0.0};
    return {cam_to_world.apply(origin_cam), normalized(forward_axis())};
  }
};

}  // namespace cue3d
