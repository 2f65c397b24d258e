#include "fovflow/bench.hpp"

#include <algorithm>
#include <chrono>

namespace fovflow {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

BenchReport run_bench(const Eigen::Ref<const Matrix>& A, const ZnnConfig& cfg,
                      const DecomposeOptions& dopt, Index grid_count,
                      int repeat, int workers) {
  if (repeat < 1) throw InputError("run_bench: repeat must be >= 1");
  BenchReport report;
  report.n = A.rows();
  report.matrix_norm = A.norm();

  std::vector<double> znn_times, baseline_times;
  FovResult pipeline;
  std::vector<BoundaryPoint> baseline_points;
  for (int r = 0; r < repeat; ++r) {
    auto start = Clock::now();
    pipeline = assemble_fov(A, cfg, dopt, workers);
    znn_times.push_back(
        std::chrono::duration<double>(Clock::now() - start).count());

    start = Clock::now();
    baseline_points = johnson_boundary_points(A, grid_count);
    const auto baseline_hull = convex_hull_indices(baseline_points);
    baseline_times.push_back(
        std::chrono::duration<double>(Clock::now() - start).count());
    if (r == repeat - 1) {
      report.baseline_hull = baseline_hull.size();
      report.hausdorff = hulls_hausdorff(pipeline.points, pipeline.hull,
                                         baseline_points, baseline_hull);
    }
  }

  report.znn_seconds = median(znn_times);
  report.baseline_seconds = median(baseline_times);
  report.speedup = report.znn_seconds > 0.0
                       ? report.baseline_seconds / report.znn_seconds
                       : 0.0;
  report.znn_points = pipeline.points.size();
  report.znn_hull = pipeline.hull.size();
  report.baseline_points = baseline_points.size();
  for (const auto& block : pipeline.blocks)
    report.block_sizes.push_back(block.size);
  report.all_blocks_normal =
      std::all_of(pipeline.blocks.begin(), pipeline.blocks.end(),
                  [](const BlockSummary& b) {
                    return b.method == BlockMethod::normal_eigenvalues;
                  });
  report.znn_timings = pipeline.timings;
  return report;
}

}  // namespace fovflow
