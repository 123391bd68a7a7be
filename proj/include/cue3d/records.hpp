#pragma once

#include <map>
#include <string>
#include <vector>

#include "cue3d/camera.hpp"

#include "json.hpp"

namespace cue3d {

// One object x variant x model evaluation result. Metric keys follow the
// reporting schema: psnr, ssim, cd, fs@<tau>, visible_cd, visible_fs@<tau>,
// symmetric (0/1), gt_symmetric (0/1), plus any extras (lpips is reserved
// for externally computed values merged in later).
struct metric_record {
  std::string object_id;
  std::string variant_id;
  std::string model_id;
  uint64_t seed = 0;
  std::map<std::string, double> metrics;
  std::string error;  // empty on success; error code text otherwise

  bool ok() const { return error.empty(); }
};

struct manifest_entry {
  std::string object_id;
  std::string gt_mesh_path;
  std::string input_image_path;
  camera_model camera;
  uint64_t seed = 0;
};

struct run_manifest {
  std::vector<manifest_entry> entries;
};

nlohmann::json to_json(const camera_model& cam);
camera_model camera_from_json(const nlohmann::json& j);

nlohmann::json to_json(const metric_record& rec);
metric_record record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const run_manifest& manifest);
run_manifest manifest_from_json(const nlohmann::json& j);

run_manifest load_manifest(const std::string& path);
void save_manifest(const run_manifest& manifest, const std::string& path);

// JSON-Lines: one record per line.
std::vector<metric_record> read_jsonl(const std::string& path);
void write_jsonl(const std::vector<metric_record>& records, const std::string& path);

// CSV export with a fixed column order and %.6g formatting; metric columns
// are the sorted union of keys so output is byte-stable for a given record
// set regardless of input order.
std::string records_to_csv(std::vector<metric_record> records);

}  // namespace cue3d
