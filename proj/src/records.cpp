#include "cue3d/records.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "cue3d/error.hpp"

namespace cue3d {

using nlohmann::json;

nlohmann::json to_json(const camera_model& cam) {
  json j;
  j["projection"] =
      cam.projection == camera_model::projection_kind::perspective ? "perspective" : "orthographic";
  if (cam.projection == camera_model::projection_kind::perspective)
    j["fov_y"] = cam.fov_y;
  else
    j["half_height"] = cam.half_height;
  j["resolution"] = {cam.width, cam.height};
  j["near"] = cam.near;
  j["far"] = cam.far;
  const mat3& r = cam.world_to_camera.rotation;
  j["rotation"] = {r[0][0], r[0][1], r[0][2], r[1][0], r[1][1],
                   r[1][2], r[2][0], r[2][1], r[2][2]};
  const vec3& t = cam.world_to_camera.translation;
  j["translation"] = {t.x, t.y, t.z};
  return j;
}

camera_model camera_from_json(const json& j) {
  std::string kind = j.value("projection", "perspective");
  auto proj = kind == "orthographic" ? camera_model::projection_kind::orthographic
                                     : camera_model::projection_kind::perspective;
  int w = 512, h = 512;
  if (j.contains("resolution")) {
    w = j["resolution"][0].get<int>();
    h = j["resolution"][1].get<int>();
  }
  double near = j.value("near", 0.05);
  double far = j.value("far", 100.0);

  // Authoring form: look-at pose.
  if (j.contains("from")) {
    auto v = [&](const char* key, vec3 def) {
      if (!j.contains(key)) return def;
      return vec3{j[key][0].get<double>(), j[key][1].get<double>(), j[key][2].get<double>()};
    };
    double param = proj == camera_model::projection_kind::perspective
                       ? radians(j.value("fov_y_deg", 40.0))
                       : j.value("half_height", 1.0);
    if (j.contains("fov_y")) param = j["fov_y"].get<double>();
    return camera_model::look_at(v("from", {0, 0, -2.7}), v("at", {0, 0, 0}), v("up", {0, 1, 0}),
                                 proj, param, w, h, near, far);
  }

  camera_model cam;
  cam.projection = proj;
  if (j.contains("fov_y")) cam.fov_y = j["fov_y"].get<double>();
  if (j.contains("half_height")) cam.half_height = j["half_height"].get<double>();
  cam.width = w;
  cam.height = h;
  cam.near = near;
  cam.far = far;
  if (j.contains("rotation")) {
    const auto& r = j["rotation"];
    for (int i = 0; i < 3; i++)
      for (int k = 0; k < 3; k++)
        cam.world_to_camera.rotation[i][k] = r[i * 3 + k].get<double>();
  }
  if (j.contains("translation")) {
    const auto& t = j["translation"];
    cam.world_to_camera.translation = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
  }
  cam.validate();
  return cam;
}

nlohmann::json to_json(const metric_record& rec) {
  json j;
  j["object_id"] = rec.object_id;
  j["variant_id"] = rec.variant_id;
  j["model_id"] = rec.model_id;
  j["seed"] = rec.seed;
  j["metrics"] = rec.metrics;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

metric_record record_from_json(const json& j) {
  metric_record rec;
  rec.object_id = j.at("object_id").get<std::string>();
  rec.variant_id = j.at("variant_id").get<std::string>();
  rec.model_id = j.at("model_id").get<std::string>();
  rec.seed = j.value("seed", 0ull);
  if (j.contains("metrics"))
    rec.metrics = j["metrics"].get<std::map<std::string, double>>();
  rec.error = j.value("error", "");
  return rec;
}

nlohmann::json to_json(const run_manifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    json je;
    je["object_id"] = e.object_id;
    je["gt_mesh_path"] = e.gt_mesh_path;
    je["input_image_path"] = e.input_image_path;
    je["camera"] = to_json(e.camera);
    je["seed"] = e.seed;
    entries.push_back(je);
  }
  return json{{"entries", entries}};
}

run_manifest manifest_from_json(const json& j) {
  run_manifest manifest;
  std::set<std::string> seen;
  for (const auto& je : j.at("entries")) {
    manifest_entry e;
    e.object_id = je.at("object_id").get<std::string>();
    if (!seen.insert(e.object_id).second)
      throw error("ManifestInvalid", "duplicate object_id " + e.object_id);
    e.gt_mesh_path = je.at("gt_mesh_path").get<std::string>();
    e.input_image_path = je.at("input_image_path").get<std::string>();
    e.camera = camera_from_json(je.at("camera"));
    e.seed = je.value("seed", 0ull);
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

run_manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("ManifestInvalid", "cannot open " + path);
  json j;
  in >> j;
  return manifest_from_json(j);
}

void save_manifest(const run_manifest& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("IoError", "cannot write " + path);
  out << to_json(manifest).dump(2) << "\n";
}

std::vector<metric_record> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("IoError", "cannot open " + path);
  std::vector<metric_record> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(json::parse(line)));
  }
  return records;
}

void write_jsonl(const std::vector<metric_record>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("IoError", "cannot write " + path);
  for (const auto& rec : records) out << to_json(rec).dump() << "\n";
}

std::string records_to_csv(std::vector<metric_record> records) {
  std::set<std::string> keys;
  for (const auto& r : records)
    for (const auto& [k, v] : r.metrics) keys.insert(k);

  std::sort(records.begin(), records.end(), [](const metric_record& a, const metric_record& b) {
    return std::tie(a.model_id, a.variant_id, a.object_id, a.seed) <
           std::tie(b.model_id, b.variant_id, b.object_id, b.seed);
  });

  std::string csv = "model_id,variant_id,object_id,seed";
  for (const auto& k : keys) csv += "," + k;
  csv += ",error\n";
  char buf[64];
  for (const auto& r : records) {
    csv += r.model_id + "," + r.variant_id + "," + r.object_id + "," + std::to_string(r.seed);
    for (const auto& k : keys) {
      auto it = r.metrics.find(k);
      if (it == r.metrics.end()) {
        csv += ",";
      } else {
        std::snprintf(buf, sizeof buf, "%.6g", it->second);
        csv += ",";
        csv += buf;
      }
    }
    csv += "," + r.error + "\n";
  }
  return csv;
}

}  // namespace cue3d
