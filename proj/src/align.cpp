#include "cue3d/align.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "cue3d/error.hpp"
#include "cue3d/kdtree.hpp"
#include "cue3d/linalg.hpp"
#include "cue3d/meshops.hpp"
#include "cue3d/metrics.hpp"

namespace cue3d {

std::vector<mat3> rotation_grid(const grid_spec& spec) {
  std::vector<mat3> grid;
  grid.reserve(static_cast<size_t>(spec.azimuth_steps) * spec.elevation_steps * spec.roll_steps);
  for (int a = 0; a < spec.azimuth_steps; a++) {
    double az = 2.0 * pi * a / spec.azimuth_steps;
    for (int e = 0; e < spec.elevation_steps; e++) {
      double el = -pi / 2.0 + pi * e / spec.elevation_steps;
      for (int r = 0; r < spec.roll_steps; r++) {
        double roll = 2.0 * pi * r / spec.roll_steps;
        grid.push_back(rotation_y(az) * rotation_x(el) * rotation_z(roll));
      }
    }
  }
  return grid;
}

namespace {

point_cloud prefix_of(const point_cloud& cloud, size_t n) {
  if (cloud.size() <= n) return cloud;
  point_cloud out;
  out.points.assign(cloud.points.begin(), cloud.points.begin() + n);
  return out;
}

// Chamfer of (r * pred) vs gt using prebuilt trees on both clouds; the
// reverse direction queries the pred tree with inverse-rotated points.
// Returns early with +inf once the partial cost exceeds the bound.
double rotated_chamfer_bounded(const mat3& r, const std::vector<vec3>& pred,
                               const kd_tree& pred_tree, const std::vector<vec3>& gt,
                               const kd_tree& gt_tree, double bound) {
  mat3 rt = transpose(r);
  double inv2n = 1.0 / (2.0 * static_cast<double>(pred.size()));
  double inv2m = 1.0 / (2.0 * static_cast<double>(gt.size()));
  double cost = 0;
  for (const auto& p : pred) {
    cost += gt_tree.nearest_distance(r * p) * inv2n;
    if (cost > bound) return std::numeric_limits<double>::infinity();
  }
  for (const auto& g : gt) {
    cost += pred_tree.nearest_distance(rt * g) * inv2m;
    if (cost > bound) return std::numeric_limits<double>::infinity();
  }
  return cost;
}

}  // namespace

align_result grid_search(const point_cloud& pred, const point_cloud& gt, const grid_spec& spec) {
  if (pred.empty() || gt.empty()) throw error("EmptyCloud", "grid_search requires non-empty clouds");

  point_cloud pred_sub = prefix_of(pred, spec.subsample);
  point_cloud gt_sub = prefix_of(gt, spec.subsample);
  kd_tree pred_tree(pred_sub.points);
  kd_tree gt_tree(gt_sub.points);

  std::vector<mat3> grid = rotation_grid(spec);
  std::vector<double> costs(grid.size(), std::numeric_limits<double>::infinity());

  // Shared upper bound for early termination. A stale value only weakens
  // pruning; candidate costs stay exact. The 1e-9 slack keeps rotations
  // tied with the minimum from being pruned mid-evaluation, so the
  // tie-break below sees all of them.
  std::mutex best_mutex;
  double best_cost = std::numeric_limits<double>::infinity();

  unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, 8);
  std::vector<std::thread> workers;
  std::atomic<size_t> next{0};
  auto run = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      double bound;
      {
        std::lock_guard<std::mutex> lock(best_mutex);
        bound = best_cost;
      }
      double c = rotated_chamfer_bounded(grid[i], pred_sub.points, pred_tree, gt_sub.points,
                                         gt_tree, bound + 1e-9);
      costs[i] = c;
      if (c < bound) {
        std::lock_guard<std::mutex> lock(best_mutex);
        best_cost = std::min(best_cost, c);
      }
    }
  };
  for (unsigned t = 0; t < n_threads; t++) workers.emplace_back(run);
  for (auto& w : workers) w.join();

  double min_cost = *std::min_element(costs.begin(), costs.end());
  // Among rotations within 1e-9 of the minimum, prefer the smallest
  // rotation angle from identity; reproducible on symmetric objects.
  size_t best_i = 0;
  double best_angle = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < grid.size(); i++) {
    if (costs[i] <= min_cost + 1e-9) {
      double angle = rotation_angle(grid[i]);
      if (angle < best_angle) {
        best_angle = angle;
        best_i = i;
      }
    }
  }

  align_result result;
  result.rotation = grid[best_i];
  result.translation = {0, 0, 0};
  result.grid_cd = costs[best_i];
  result.final_cd = costs[best_i];
  return result;
}

namespace {

// Horn's closed-form rigid fit: rotation as the dominant eigenvector of
// the 4x4 quaternion matrix (always a proper rotation), then translation
// from the centroids.
bool solve_rigid(const std::vector<vec3>& src, const std::vector<vec3>& dst, mat3& r_out,
                 vec3& t_out) {
  size_t n = src.size();
  if (n < 3) return false;
  vec3 cs{0, 0, 0}, cd{0, 0, 0};
  for (size_t i = 0; i < n; i++) {
    cs += src[i];
    cd += dst[i];
  }
  cs = cs / static_cast<double>(n);
  cd = cd / static_cast<double>(n);

  double s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (size_t i = 0; i < n; i++) {
    vec3 a = src[i] - cs, b = dst[i] - cd;
    double av[3] = {a.x, a.y, a.z}, bv[3] = {b.x, b.y, b.z};
    for (int p = 0; p < 3; p++)
      for (int q = 0; q < 3; q++) s[p][q] += av[p] * bv[q];
  }

  std::array<std::array<double, 4>, 4> nmat{};
  nmat[0] = {s[0][0] + s[1][1] + s[2][2], s[1][2] - s[2][1], s[2][0] - s[0][2], s[0][1] - s[1][0]};
  nmat[1] = {s[1][2] - s[2][1], s[0][0] - s[1][1] - s[2][2], s[0][1] + s[1][0], s[2][0] + s[0][2]};
  nmat[2] = {s[2][0] - s[0][2], s[0][1] + s[1][0], -s[0][0] + s[1][1] - s[2][2], s[1][2] + s[2][1]};
  nmat[3] = {s[0][1] - s[1][0], s[2][0] + s[0][2], s[1][2] + s[2][1], -s[0][0] - s[1][1] + s[2][2]};

  std::array<std::array<double, 4>, 4> vecs;
  jacobi_eigen<4>(nmat, vecs);
  int best = 0;
  for (int i = 1; i < 4; i++)
    if (nmat[i][i] > nmat[best][best]) best = i;
  double w = vecs[0][best], x = vecs[1][best], y = vecs[2][best], z = vecs[3][best];
  double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (norm < 1e-300) return false;
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;

  mat3 r;
  r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
  r_out = r;
  t_out = cd - r * cs;
  return true;
}

}  // namespace

align_result icp_refine(const point_cloud& pred, const point_cloud& gt,
                        const align_result& init) {
  if (pred.empty() || gt.empty()) throw error("EmptyCloud", "icp_refine requires non-empty clouds");
  kd_tree gt_tree(gt.points);

  rigid_transform current{init.rotation, init.translation};
  align_result result = init;
  result.icp_objective.clear();
  result.icp_iterations = 0;

  auto correspondence_rms = [&](const rigid_transform& t, std::vector<vec3>& moved,
                                std::vector<vec3>& matched, std::vector<double>& dists) {
    moved.resize(pred.size());
    matched.resize(pred.size());
    dists.resize(pred.size());
    double sum_sq = 0;
    for (size_t i = 0; i < pred.size(); i++) {
      moved[i] = t.apply(pred.points[i]);
      double d2;
      size_t j = gt_tree.nearest(moved[i], d2);
      matched[i] = gt.points[j];
      dists[i] = std::sqrt(d2);
      sum_sq += d2;
    }
    return std::sqrt(sum_sq / static_cast<double>(pred.size()));
  };

  std::vector<vec3> moved, matched;
  std::vector<double> dists;
  double rms = correspondence_rms(current, moved, matched, dists);
  result.icp_objective.push_back(rms);

  for (int iter = 0; iter < 50; iter++) {
    // Reject pairs beyond 3x the median pair distance.
    std::vector<double> sorted = dists;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double median = sorted[sorted.size() / 2];
    double limit = 3.0 * median;

    std::vector<vec3> src, dst;
    src.reserve(moved.size());
    dst.reserve(moved.size());
    for (size_t i = 0; i < moved.size(); i++) {
      if (dists[i] <= limit) {
        src.push_back(moved[i]);
        dst.push_back(matched[i]);
      }
    }

    mat3 r_update;
    vec3 t_update;
    if (!solve_rigid(src, dst, r_update, t_update)) break;
    rigid_transform candidate = rigid_transform{r_update, t_update} * current;

    double rms_new = correspondence_rms(candidate, moved, matched, dists);
    if (rms_new > rms) {
      // Regressed: keep the previous transform and re-derive its pairs.
      rms = correspondence_rms(current, moved, matched, dists);
      break;
    }
    current = candidate;
    result.icp_iterations = iter + 1;
    result.icp_objective.push_back(rms_new);
    double improvement = rms > 0 ? (rms - rms_new) / rms : 0.0;
    rms = rms_new;
    if (improvement < 1e-6) break;
  }

  // final_cd <= grid_cd: fall back to the initial transform if refinement
  // did not help the symmetric Chamfer.
  point_cloud refined = transformed(pred, current.rotation, current.translation);
  double cd_refined = chamfer(refined, gt);
  if (cd_refined <= init.final_cd) {
    result.rotation = current.rotation;
    result.translation = current.translation;
    result.final_cd = cd_refined;
  } else {
    result.rotation = init.rotation;
    result.translation = init.translation;
    result.final_cd = init.final_cd;
  }
  result.grid_cd = init.grid_cd;
  return result;
}

std::pair<align_result, tri_mesh> align(const tri_mesh& pred_mesh, const tri_mesh& gt_mesh,
                                        const align_config& config) {
  tri_mesh pred_norm = normalize(pred_mesh);
  tri_mesh gt_norm = normalize(gt_mesh);

  point_cloud pred_cloud = sample_surface(pred_norm, config.samples, config.seed);
  point_cloud gt_cloud = sample_surface(gt_norm, config.samples, config.seed);

  align_result coarse = grid_search(pred_cloud, gt_cloud, config.grid);

  // Re-measure the coarse transform on the full clouds so grid_cd and
  // final_cd are comparable.
  point_cloud coarse_cloud = transformed(pred_cloud, coarse.rotation, coarse.translation);
  coarse.grid_cd = chamfer(coarse_cloud, gt_cloud);
  coarse.final_cd = coarse.grid_cd;

  align_result refined = icp_refine(pred_cloud, gt_cloud, coarse);

  tri_mesh aligned = transformed(pred_norm, refined.rotation, refined.translation);
  return {refined, aligned};
}

}  // namespace cue3d
