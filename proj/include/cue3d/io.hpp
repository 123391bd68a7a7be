#pragma once

#include <string>
#include <vector>

#include "cue3d/camera.hpp"
#include "cue3d/image.hpp"
#include "cue3d/mesh.hpp"

namespace cue3d {

// PNG, 8-bit RGBA.
rgba_image read_png(const std::string& path);
void write_png(const rgba_image& img, const std::string& path);

// Mesh ingest/export by extension: .obj (vertex colors as the common
// "v x y z r g b" extension) or binary little-endian .ply.
tri_mesh read_mesh(const std::string& path);
void write_mesh(const tri_mesh& mesh, const std::string& path);

tri_mesh read_obj(const std::string& path);
void write_obj(const tri_mesh& mesh, const std::string& path);
tri_mesh read_ply(const std::string& path);
void write_ply(const tri_mesh& mesh, const std::string& path);

}  // namespace cue3d
