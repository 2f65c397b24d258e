#pragma once

#include <optional>
#include <vector>

#include "fovflow/core.hpp"
#include "fovflow/decompose.hpp"
#include "fovflow/znn.hpp"

namespace fovflow {

/// One computed boundary-curve point x^*Ax in the complex plane.  `angle` is
/// the flow angle of the supporting normal; eigenvalue points of normal
/// blocks carry no angle.
struct BoundaryPoint {
  double re = 0.0;
  double im = 0.0;
  std::optional<double> angle;
  int block_id = 0;
};

enum class BlockMethod { normal_eigenvalues, znn_track, grid_fallback };

struct BlockSummary {
  Index size = 0;
  BlockMethod method = BlockMethod::normal_eigenvalues;
  double seconds = 0.0;
  std::size_t point_count = 0;
};

struct FovTimings {
  double decompose_seconds = 0.0;
  double blocks_seconds = 0.0;
  double hull_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Per-block boundary points, the pooled depository, and the global hull.
/// `hull` holds indices into `points`, counterclockwise, first vertex the
/// lowest-then-leftmost one.
struct FovResult {
  std::vector<BoundaryPoint> points;
  std::vector<std::size_t> hull;
  std::vector<BlockSummary> blocks;
  double decomposition_residual = 0.0;
  double numerical_radius = 0.0;
  double crawford_number = 0.0;
  FovTimings timings;

  std::vector<BoundaryPoint> hull_points() const;
};

/// Andrew monotone chain.  Duplicates within 1e-14 (absolute, per
/// coordinate) are merged and collinear interior points dropped.  Degenerate
/// inputs yield a single vertex or the two extreme endpoints.
std::vector<std::size_t> convex_hull_indices(
    const std::vector<BoundaryPoint>& points);

/// Distance from (re, im) to the hull treated as a convex region (0 inside).
double distance_to_hull(const std::vector<BoundaryPoint>& points,
                        const std::vector<std::size_t>& hull, double re,
                        double im);

/// Symmetric Hausdorff distance between two hulls, evaluated vertex to
/// convex polygon in both directions.
double hulls_hausdorff(const std::vector<BoundaryPoint>& pts_a,
                       const std::vector<std::size_t>& hull_a,
                       const std::vector<BoundaryPoint>& pts_b,
                       const std::vector<std::size_t>& hull_b);
double hulls_hausdorff(const FovResult& a, const FovResult& b);

/// Dense-grid baseline: full hermitean eigendecomposition of the flow at
/// grid_count angles, boundary points from both extreme eigenvectors.
/// Correct for decomposable and indecomposable input alike; used as the
/// oracle for the path-following pipeline.
std::vector<BoundaryPoint> johnson_boundary_points(
    const Eigen::Ref<const Matrix>& A, Index grid_count);

struct BlockBoundary {
  std::vector<BoundaryPoint> points;
  BlockMethod method = BlockMethod::normal_eigenvalues;
};

/// Boundary points of one indecomposable diagonal block: eigenvalues when
/// the block is normal, otherwise the tracked extreme eigencurve mapped
/// through the quadratic form.  A tracking abort falls back to the dense
/// grid for this block.
BlockBoundary block_boundary_points(const Eigen::Ref<const Matrix>& block,
                                    const ZnnConfig& cfg);

/// Decompose, run every block, pool the depository, hull it, and derive the
/// numerical radius and Crawford number.  `workers` > 1 runs blocks
/// concurrently; the output does not depend on the schedule.
FovResult assemble_fov(const Eigen::Ref<const Matrix>& A, const ZnnConfig& cfg,
                       const DecomposeOptions& dopt = {}, int workers = 1);

/// max |p| over hull vertices.
double numerical_radius(const FovResult& result);

/// Distance from the origin to the hull as a convex region.
double crawford_number(const FovResult& result);

/// Eigencurves of the flow on a uniform angle grid, grouped by the blocks of
/// the decomposition (one group of n curves when indecomposable).
struct EigencurveData {
  RealVector angles;
  std::vector<Index> block_sizes;
  std::vector<RealMatrix> curves;  // per block: grid_count x block_size, ascending
};

EigencurveData eigencurves(const Eigen::Ref<const Matrix>& A, Index grid_count,
                           const DecomposeOptions& dopt = {});

}  // namespace fovflow
