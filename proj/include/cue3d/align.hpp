#pragma once

#include <cstdint>
#include <vector>

#include "cue3d/cloud.hpp"
#include "cue3d/mesh.hpp"

namespace cue3d {

struct align_result {
  mat3 rotation = mat3::identity();
  vec3 translation{0, 0, 0};
  double grid_cd = 0;   // Chamfer after the coarse rotation, same clouds as final_cd
  double final_cd = 0;  // Chamfer after refinement; never worse than grid_cd
  int icp_iterations = 0;
  // Mean correspondence distance (RMS) per accepted ICP iteration,
  // non-increasing by construction.
  std::vector<double> icp_objective;
};

struct grid_spec {
  int azimuth_steps = 24;
  int elevation_steps = 24;
  int roll_steps = 12;
  size_t subsample = 2048;  // grid-search Chamfer is evaluated on this many points
};

// All rotations of the azimuth x elevation x roll grid. Azimuth and roll
// cover [0, 2pi) and elevation covers [-pi/2, pi/2), all half-open so the
// identity is on the grid.
std::vector<mat3> rotation_grid(const grid_spec& spec = {});

// Brute-force search over the rotation grid for the rotation minimizing
// chamfer(R * pred, gt). Ties within 1e-9 resolve to the smallest rotation
// angle from identity. Translation is zero.
align_result grid_search(const point_cloud& pred, const point_cloud& gt,
                         const grid_spec& spec = {});

// Point-to-point ICP from the given initial transform: nearest-neighbor
// correspondences, rejection beyond 3x the median pair distance,
// closed-form rigid update. An update is accepted only if the RMS
// correspondence distance does not increase; stops after 50 iterations or
// when the relative improvement drops below 1e-6.
align_result icp_refine(const point_cloud& pred, const point_cloud& gt,
                        const align_result& init);

// Full pipeline on meshes: normalize both, sample both with the same
// stream (congruent meshes get corresponding samples), coarse grid search,
// ICP refinement. Returns the transform and the transformed (normalized)
// prediction mesh.
struct align_config {
  size_t samples = 16384;
  uint64_t seed = 0;
  grid_spec grid;
};

std::pair<align_result, tri_mesh> align(const tri_mesh& pred_mesh, const tri_mesh& gt_mesh,
                                        const align_config& config);

}  // namespace cue3d
