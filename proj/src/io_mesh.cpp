#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cue3d/error.hpp"
#include "cue3d/io.hpp"

namespace cue3d {

tri_mesh read_mesh(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == "obj") return read_obj(path);
  if (ext == "ply") return read_ply(path);
  throw error("IoError", "unsupported mesh format: " + path);
}

void write_mesh(const tri_mesh& mesh, const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == "obj") return write_obj(mesh, path);
  if (ext == "ply") return write_ply(mesh, path);
  throw error("IoError", "unsupported mesh format: " + path);
}

tri_mesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("IoError", "cannot open " + path);
  tri_mesh mesh;
  bool any_color = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.size() < 2) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      double x, y, z, r, g, b;
      ss >> x >> y >> z;
      mesh.vertices.push_back({x, y, z});
      if (ss >> r >> g >> b) {
        any_color = true;
        mesh.vertex_colors.push_back({r, g, b});
      } else {
        mesh.vertex_colors.push_back({1, 1, 1});
      }
    } else if (tag == "f") {
      // Triangulate polygons as a fan; indices may be v, v/vt, v/vt/vn.
      std::vector<long> idx;
      std::string word;
      while (ss >> word) {
        long v = std::strtol(word.c_str(), nullptr, 10);
        if (v < 0) v = static_cast<long>(mesh.vertices.size()) + v + 1;
        idx.push_back(v - 1);
      }
      for (size_t k = 2; k < idx.size(); k++) {
        mesh.faces.push_back({static_cast<uint32_t>(idx[0]), static_cast<uint32_t>(idx[k - 1]),
                              static_cast<uint32_t>(idx[k])});
      }
    }
  }
  if (!any_color) mesh.vertex_colors.clear();
  if (!valid_topology(mesh)) throw error("IoError", "invalid OBJ topology in " + path);
  return mesh;
}

void write_obj(const tri_mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("IoError", "cannot write " + path);
  char buf[160];
  for (size_t i = 0; i < mesh.vertices.size(); i++) {
    const vec3& v = mesh.vertices[i];
    if (mesh.has_colors()) {
      const vec3& c = mesh.vertex_colors[i];
      std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g %.6g %.6g %.6g\n", v.x, v.y, v.z, c.x, c.y,
                    c.z);
    } else {
      std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
    }
    out << buf;
  }
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

namespace {

struct ply_property {
  std::string type;
  std::string name;
  bool is_list = false;
  std::string count_type;
};

size_t scalar_size(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" || type == "float" ||
      type == "float32")
    return 4;
  if (type == "double" || type == "float64") return 8;
  throw error("IoError", "unknown PLY type " + type);
}

double read_scalar(std::istream& in, const std::string& type) {
  unsigned char buf[8];
  size_t n = scalar_size(type);
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  if (type == "float" || type == "float32") {
    float f;
    std::memcpy(&f, buf, 4);
    return f;
  }
  if (type == "double" || type == "float64") {
    double d;
    std::memcpy(&d, buf, 8);
    return d;
  }
  uint64_t u = 0;
  for (size_t i = 0; i < n; i++) u |= static_cast<uint64_t>(buf[i]) << (8 * i);
  bool is_signed = type[0] == 'c' || type[0] == 's' || (type[0] == 'i');
  if (is_signed) {
    int64_t s = static_cast<int64_t>(u << (64 - 8 * n)) >> (64 - 8 * n);
    return static_cast<double>(s);
  }
  return static_cast<double>(u);
}

}  // namespace

tri_mesh read_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("IoError", "cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("ply", 0) != 0) throw error("IoError", path + " is not a PLY file");

  struct element {
    std::string name;
    size_t count = 0;
    std::vector<ply_property> props;
  };
  std::vector<element> elements;
  bool binary = false, ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "format") {
      std::string fmt;
      ss >> fmt;
      binary = fmt == "binary_little_endian";
      ascii = fmt == "ascii";
      if (!binary && !ascii) throw error("IoError", "unsupported PLY format " + fmt);
    } else if (tag == "element") {
      element e;
      ss >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      ply_property p;
      std::string t;
      ss >> t;
      if (t == "list") {
        p.is_list = true;
        ss >> p.count_type >> p.type >> p.name;
      } else {
        p.type = t;
        ss >> p.name;
      }
      if (elements.empty()) throw error("IoError", "PLY property before element");
      elements.back().props.push_back(p);
    } else if (tag == "end_header") {
      break;
    }
  }

  tri_mesh mesh;
  bool has_color = false;
  for (const auto& e : elements) {
    if (e.name == "vertex") {
      for (const auto& p : e.props)
        if (p.name == "red") has_color = true;
      mesh.vertices.reserve(e.count);
      for (size_t i = 0; i < e.count; i++) {
        vec3 v, c{1, 1, 1};
        if (ascii) {
          std::getline(in, line);
          std::istringstream ss(line);
          for (const auto& p : e.props) {
            double val;
            ss >> val;
            if (p.name == "x") v.x = val;
            else if (p.name == "y") v.y = val;
            else if (p.name == "z") v.z = val;
            else if (p.name == "red") c.x = val / 255.0;
            else if (p.name == "green") c.y = val / 255.0;
            else if (p.name == "blue") c.z = val / 255.0;
          }
        } else {
          for (const auto& p : e.props) {
            double val = read_scalar(in, p.type);
            if (p.name == "x") v.x = val;
            else if (p.name == "y") v.y = val;
            else if (p.name == "z") v.z = val;
            else if (p.name == "red") c.x = val / 255.0;
            else if (p.name == "green") c.y = val / 255.0;
            else if (p.name == "blue") c.z = val / 255.0;
          }
        }
        mesh.vertices.push_back(v);
        if (has_color) mesh.vertex_colors.push_back(c);
      }
    } else if (e.name == "face") {
      mesh.faces.reserve(e.count);
      for (size_t i = 0; i < e.count; i++) {
        std::vector<uint32_t> idx;
        if (ascii) {
          std::getline(in, line);
          std::istringstream ss(line);
          size_t n;
          ss >> n;
          idx.resize(n);
          for (auto& id : idx) ss >> id;
        } else {
          const auto& p = e.props.at(0);
          size_t n = static_cast<size_t>(read_scalar(in, p.count_type));
          idx.resize(n);
          for (auto& id : idx) id = static_cast<uint32_t>(read_scalar(in, p.type));
        }
        for (size_t k = 2; k < idx.size(); k++)
          mesh.faces.push_back({idx[0], idx[k - 1], idx[k]});
      }
    } else {
      // Skip unknown elements (binary only when fixed-size).
      for (size_t i = 0; i < e.count; i++) {
        if (ascii) {
          std::getline(in, line);
        } else {
          for (const auto& p : e.props) {
            if (p.is_list) {
              size_t n = static_cast<size_t>(read_scalar(in, p.count_type));
              for (size_t k = 0; k < n; k++) read_scalar(in, p.type);
            } else {
              read_scalar(in, p.type);
            }
          }
        }
      }
    }
  }
  if (!in) throw error("IoError", "truncated PLY " + path);
  if (!valid_topology(mesh)) throw error("IoError", "invalid PLY topology in " + path);
  return mesh;
}

void write_ply(const tri_mesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("IoError", "cannot write " + path);
  out << "ply\nformat binary_little_endian 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  if (mesh.has_colors())
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar uint vertex_indices\n";
  out << "end_header\n";
  for (size_t i = 0; i < mesh.vertices.size(); i++) {
    float xyz[3] = {static_cast<float>(mesh.vertices[i].x), static_cast<float>(mesh.vertices[i].y),
                    static_cast<float>(mesh.vertices[i].z)};
    out.write(reinterpret_cast<const char*>(xyz), 12);
    if (mesh.has_colors()) {
      const vec3& c = mesh.vertex_colors[i];
      unsigned char rgb[3] = {
          static_cast<unsigned char>(std::clamp(c.x, 0.0, 1.0) * 255.0 + 0.5),
          static_cast<unsigned char>(std::clamp(c.y, 0.0, 1.0) * 255.0 + 0.5),
          static_cast<unsigned char>(std::clamp(c.z, 0.0, 1.0) * 255.0 + 0.5)};
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
  for (const auto& f : mesh.faces) {
    unsigned char n = 3;
    out.write(reinterpret_cast<const char*>(&n), 1);
    uint32_t idx[3] = {f[0], f[1], f[2]};
    out.write(reinterpret_cast<const char*>(idx), 12);
  }
}

}  // namespace cue3d
