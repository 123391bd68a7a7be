#include <png.h>

#include <cstring>

#include "cue3d/error.hpp"
#include "cue3d/io.hpp"

namespace cue3d {

rgba_image read_png(const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw error("IoError", "cannot read PNG " + path + ": " + png.message);
  png.format = PNG_FORMAT_RGBA;
  rgba_image img(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr)) {
    png_image_free(&png);
    throw error("IoError", "cannot decode PNG " + path);
  }
  return img;
}

void write_png(const rgba_image& img, const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.width);
  png.height = static_cast<png_uint_32>(img.height);
  png.format = PNG_FORMAT_RGBA;
  if (!png_image_write_to_file(&png, path.c_str(), 0, img.pixels.data(), 0, nullptr))
    throw error("IoError", "cannot write PNG " + path + ": " + png.message);
}

}  // namespace cue3d
