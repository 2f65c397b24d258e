#include "fovflow/fov.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace fovflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double cross(const BoundaryPoint& o, const BoundaryPoint& a,
             const BoundaryPoint& b) {
  return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
}

double segment_distance(const BoundaryPoint& a, const BoundaryPoint& b,
                        double re, double im) {
  const double dx = b.re - a.re;
  const double dy = b.im - a.im;
  const double len2 = dx * dx + dy * dy;
  double s = 0.0;
  if (len2 > 0.0) {
    s = ((re - a.re) * dx + (im - a.im) * dy) / len2;
    s = std::clamp(s, 0.0, 1.0);
  }
  return std::hypot(re - (a.re + s * dx), im - (a.im + s * dy));
}

}  // namespace

std::vector<BoundaryPoint> FovResult::hull_points() const {
  std::vector<BoundaryPoint> vertices;
  vertices.reserve(hull.size());
  for (std::size_t idx : hull) vertices.push_back(points[idx]);
  return vertices;
}

std::vector<std::size_t> convex_hull_indices(
    const std::vector<BoundaryPoint>& points) {
  if (points.empty())
    throw InputError("convex_hull: need at least one point");
  for (const auto& p : points)
    if (!std::isfinite(p.re) || !std::isfinite(p.im))
      throw InputError("convex_hull: non-finite point coordinates");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].re != points[b].re) return points[a].re < points[b].re;
    return points[a].im < points[b].im;
  });

  // Merge duplicates (1e-14 absolute per coordinate).
  std::vector<std::size_t> kept;
  kept.reserve(order.size());
  for (std::size_t idx : order) {
    if (!kept.empty()) {
      const auto& prev = points[kept.back()];
      if (std::abs(points[idx].re - prev.re) <= 1e-14 &&
          std::abs(points[idx].im - prev.im) <= 1e-14)
        continue;
    }
    kept.push_back(idx);
  }
  if (kept.size() == 1) return kept;

  std::vector<std::size_t> hull;
  hull.reserve(kept.size() + 1);
  for (std::size_t idx : kept) {
    while (hull.size() >= 2 &&
           cross(points[hull[hull.size() - 2]], points[hull.back()],
                 points[idx]) <= 0.0)
      hull.pop_back();
    hull.push_back(idx);
  }
  const std::size_t lower_size = hull.size() + 1;
  for (auto it = kept.rbegin() + 1; it != kept.rend(); ++it) {
    while (hull.size() >= lower_size &&
           cross(points[hull[hull.size() - 2]], points[hull.back()],
                 points[*it]) <= 0.0)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();  // closes on the first vertex

  // Start at the lowest-then-leftmost vertex.
  std::size_t start = 0;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const auto& best = points[hull[start]];
    const auto& cand = points[hull[i]];
    if (cand.im < best.im || (cand.im == best.im && cand.re < best.re))
      start = i;
  }
  std::rotate(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(start),
              hull.end());
  return hull;
}

double distance_to_hull(const std::vector<BoundaryPoint>& points,
                        const std::vector<std::size_t>& hull, double re,
                        double im) {
  if (hull.empty()) throw InputError("distance_to_hull: empty hull");
  if (hull.size() == 1)
    return std::hypot(re - points[hull[0]].re, im - points[hull[0]].im);
  if (hull.size() == 2)
    return segment_distance(points[hull[0]], points[hull[1]], re, im);

  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = points[hull[i]];
    const auto& b = points[hull[(i + 1) % hull.size()]];
    const BoundaryPoint p{re, im, std::nullopt, 0};
    if (cross(a, b, p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = points[hull[i]];
    const auto& b = points[hull[(i + 1) % hull.size()]];
    best = std::min(best, segment_distance(a, b, re, im));
  }
  return best;
}

double hulls_hausdorff(const std::vector<BoundaryPoint>& pts_a,
                       const std::vector<std::size_t>& hull_a,
                       const std::vector<BoundaryPoint>& pts_b,
                       const std::vector<std::size_t>& hull_b) {
  double worst = 0.0;
  for (std::size_t idx : hull_a) {
    worst = std::max(worst, distance_to_hull(pts_b, hull_b, pts_a[idx].re,
                                             pts_a[idx].im));
  }
  for (std::size_t idx : hull_b) {
    worst = std::max(worst, distance_to_hull(pts_a, hull_a, pts_b[idx].re,
                                             pts_b[idx].im));
  }
  return worst;
}

double hulls_hausdorff(const FovResult& a, const FovResult& b) {
  return hulls_hausdorff(a.points, a.hull, b.points, b.hull);
}

std::vector<BoundaryPoint> johnson_boundary_points(
    const Eigen::Ref<const Matrix>& A, Index grid_count) {
  if (grid_count < 3)
    throw InputError("johnson_boundary_points: need at least 3 grid angles");
  const HermitianFlow flow = split_hermitian(A);
  const Index n = A.rows();
  std::vector<BoundaryPoint> points;
  points.reserve(static_cast<std::size_t>(2 * grid_count));
  for (Index i = 0; i < grid_count; ++i) {
    const double t = 2.0 * M_PI * static_cast<double>(i) /
                     static_cast<double>(grid_count);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(flow_eval(flow, t)));
    if (solver.info() != Eigen::Success)
      throw NumericalError("johnson_boundary_points: eigensolver failed at t = " +
                           std::to_string(t));
    const Complex top = quadratic_form(A, solver.eigenvectors().col(n - 1));
    const Complex bottom = quadratic_form(A, solver.eigenvectors().col(0));
    double t_bottom = t + M_PI;
    if (t_bottom >= 2.0 * M_PI) t_bottom -= 2.0 * M_PI;
    points.push_back({top.real(), top.imag(), t, 0});
    points.push_back({bottom.real(), bottom.imag(), t_bottom, 0});
  }
  std::sort(points.begin(), points.end(),
            [](const BoundaryPoint& a, const BoundaryPoint& b) {
              return a.angle.value() < b.angle.value();
            });
  return points;
}

BlockBoundary block_boundary_points(const Eigen::Ref<const Matrix>& block,
                                    const ZnnConfig& cfg) {
  BlockBoundary result;
  if (is_normal(block)) {
    Eigen::ComplexEigenSolver<Matrix> solver(block, false);
    if (solver.info() != Eigen::Success)
      throw NumericalError("block_boundary_points: eigensolver failed");
    result.method = BlockMethod::normal_eigenvalues;
    result.points.reserve(static_cast<std::size_t>(block.rows()));
    for (Index i = 0; i < block.rows(); ++i) {
      const Complex ev = solver.eigenvalues()(i);
      result.points.push_back({ev.real(), ev.imag(), std::nullopt, 0});
    }
    return result;
  }

  const HermitianFlow flow = split_hermitian(block);
  try {
    const auto samples = track_extreme_eigencurve(flow, cfg);
    result.method = BlockMethod::znn_track;
    result.points.reserve(samples.size());
    for (const auto& sample : samples) {
      const Complex p = quadratic_form(block, sample.x);
      result.points.push_back({p.real(), p.imag(), sample.t, 0});
    }
    return result;
  } catch (const NumericalError&) {
    const Index grid = cfg.fallback_grid > 0
                           ? cfg.fallback_grid
                           : static_cast<Index>(std::llround(2.0 * M_PI / cfg.tau));
    result.points = johnson_boundary_points(block, grid);
    result.method = BlockMethod::grid_fallback;
    return result;
  }
}

FovResult assemble_fov(const Eigen::Ref<const Matrix>& A, const ZnnConfig& cfg,
                       const DecomposeOptions& dopt, int workers) {
  const auto total_start = Clock::now();
  FovResult result;

  const auto decompose_start = Clock::now();
  const Decomposition decomp = decompose(A, dopt);
  result.decomposition_residual = decomp.residual;
  result.timings.decompose_seconds = seconds_since(decompose_start);

  const std::size_t block_count = decomp.blocks.size();
  std::vector<BlockBoundary> boundaries(block_count);
  std::vector<double> block_seconds(block_count, 0.0);

  const auto blocks_start = Clock::now();
  const auto run_block = [&](std::size_t j) {
    const auto start = Clock::now();
    boundaries[j] = block_boundary_points(decomp.blocks[j], cfg);
    block_seconds[j] = seconds_since(start);
  };

  if (workers <= 1 || block_count <= 1) {
    for (std::size_t j = 0; j < block_count; ++j) run_block(j);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> failures(block_count);
    const std::size_t pool = std::min<std::size_t>(
        static_cast<std::size_t>(workers), block_count);
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (std::size_t j = cursor.fetch_add(1); j < block_count;
             j = cursor.fetch_add(1)) {
          try {
            run_block(j);
          } catch (...) {
            failures[j] = std::current_exception();
          }
        }
      });
    }
    for (auto& thread : threads) thread.join();
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }
  result.timings.blocks_seconds = seconds_since(blocks_start);

  for (std::size_t j = 0; j < block_count; ++j) {
    BlockSummary summary;
    summary.size = decomp.block_sizes[j];
    summary.method = boundaries[j].method;
    summary.seconds = block_seconds[j];
    summary.point_count = boundaries[j].points.size();
    result.blocks.push_back(summary);
    for (auto point : boundaries[j].points) {
      point.block_id = static_cast<int>(j);
      result.points.push_back(point);
    }
  }

  const auto hull_start = Clock::now();
  result.hull = convex_hull_indices(result.points);
  result.timings.hull_seconds = seconds_since(hull_start);

  result.numerical_radius = numerical_radius(result);
  result.crawford_number = crawford_number(result);
  result.timings.total_seconds = seconds_since(total_start);
  return result;
}

double numerical_radius(const FovResult& result) {
  if (result.hull.empty())
    throw InputError("numerical_radius: empty hull");
  double radius = 0.0;
  for (std::size_t idx : result.hull)
    radius = std::max(radius,
                      std::hypot(result.points[idx].re, result.points[idx].im));
  return radius;
}

double crawford_number(const FovResult& result) {
  if (result.hull.empty())
    throw InputError("crawford_number: empty hull");
  return distance_to_hull(result.points, result.hull, 0.0, 0.0);
}

EigencurveData eigencurves(const Eigen::Ref<const Matrix>& A, Index grid_count,
                           const DecomposeOptions& dopt) {
  if (grid_count < 8)
    throw InputError("eigencurves: need at least 8 grid angles");
  const Decomposition decomp = decompose(A, dopt);

  EigencurveData data;
  data.angles.resize(grid_count);
  for (Index i = 0; i < grid_count; ++i)
    data.angles(i) =
        2.0 * M_PI * static_cast<double>(i) / static_cast<double>(grid_count);
  data.block_sizes = decomp.block_sizes;

  data.curves.reserve(decomp.blocks.size());
  for (const Matrix& block : decomp.blocks) {
    const HermitianFlow flow = split_hermitian(block);
    RealMatrix curve(grid_count, block.rows());
    for (Index i = 0; i < grid_count; ++i) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(
          hermitize(flow_eval(flow, data.angles(i))), Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success)
        throw NumericalError("eigencurves: eigensolver failed");
      curve.row(i) = solver.eigenvalues().transpose();
    }
    data.curves.push_back(std::move(curve));
  }
  return data;
}

}  // namespace fovflow
