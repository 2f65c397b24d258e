#pragma once

#include <vector>

#include "fovflow/fov.hpp"

namespace fovflow {

/// Side-by-side run of the path-following pipeline and the dense-grid
/// baseline on the same matrix.
struct BenchReport {
  Index n = 0;
  std::vector<Index> block_sizes;
  bool all_blocks_normal = false;
  std::size_t znn_points = 0;
  std::size_t znn_hull = 0;
  std::size_t baseline_points = 0;
  std::size_t baseline_hull = 0;
  double znn_seconds = 0.0;       // median over repeats
  double baseline_seconds = 0.0;  // median over repeats
  double speedup = 0.0;           // baseline / pipeline
  double hausdorff = 0.0;         // between the two hulls
  double matrix_norm = 0.0;       // ||A||_F, the scale of the distance
  FovTimings znn_timings;
};

BenchReport run_bench(const Eigen::Ref<const Matrix>& A, const ZnnConfig& cfg,
                      const DecomposeOptions& dopt, Index grid_count,
                      int repeat = 1, int workers = 1);

}  // namespace fovflow
