#pragma once

// Test-only oracles, independent of the library paths they check.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fovflow/core.hpp"
#include "fovflow/fov.hpp"

namespace oracles {

using fovflow::BoundaryPoint;
using fovflow::Complex;
using fovflow::HermitianFlow;
using fovflow::Index;
using fovflow::Matrix;
using fovflow::RealVector;

inline RealVector flow_eigenvalues(const HermitianFlow& flow, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      fovflow::hermitize(fovflow::flow_eval(flow, t)), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Smallest gap between adjacent eigencurves over [0, 2pi), scanned on a grid
// and refined around every local minimum by golden-section search.  A true
// eigencurve crossing drives the refined gap to rounding level; avoided
// crossings leave it positive.  Used to certify (in)decomposability verdicts
// independently of the pattern pipeline.
inline double min_refined_eigengap(const HermitianFlow& flow, int grid = 720) {
  const Index n = flow.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  std::vector<RealVector> values;
  values.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i)
    values.push_back(flow_eigenvalues(flow, 2.0 * M_PI * i / grid));

  auto gap_at = [&](double t, Index pair) {
    const RealVector ev = flow_eigenvalues(flow, t);
    return ev(pair + 1) - ev(pair);
  };

  double best = std::numeric_limits<double>::infinity();
  const double step = 2.0 * M_PI / grid;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (Index pair = 0; pair + 1 < n; ++pair) {
    for (int i = 0; i < grid; ++i) {
      const double here = values[i](pair + 1) - values[i](pair);
      const double prev = values[(i + grid - 1) % grid](pair + 1) -
                          values[(i + grid - 1) % grid](pair);
      const double next = values[(i + 1) % grid](pair + 1) -
                          values[(i + 1) % grid](pair);
      if (here > prev || here > next) continue;  // not a local minimum
      double a = step * (i - 1), b = step * (i + 1);
      double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
      double f1 = gap_at(x1, pair), f2 = gap_at(x2, pair);
      for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = gap_at(x1, pair);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = gap_at(x2, pair);
        }
      }
      best = std::min(best, std::min(f1, f2));
    }
  }
  return best;
}

// Gift-wrapping hull, an independent O(n h) check of the monotone chain.
inline std::vector<std::size_t> jarvis_hull(
    const std::vector<BoundaryPoint>& pts) {
  const std::size_t n = pts.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i].im < pts[start].im ||
        (pts[i].im == pts[start].im && pts[i].re < pts[start].re))
      start = i;
  }
  std::vector<std::size_t> hull;
  std::size_t current = start;
  do {
    hull.push_back(current);
    std::size_t candidate = (current + 1) % n;
    for (std::size_t i = 0; i < n; ++i) {
      const double cross =
          (pts[candidate].re - pts[current].re) * (pts[i].im - pts[current].im) -
          (pts[candidate].im - pts[current].im) * (pts[i].re - pts[current].re);
      const double d_cand = std::hypot(pts[candidate].re - pts[current].re,
                                       pts[candidate].im - pts[current].im);
      const double d_i = std::hypot(pts[i].re - pts[current].re,
                                    pts[i].im - pts[current].im);
      if (cross < 0.0 || (cross == 0.0 && d_i > d_cand)) candidate = i;
    }
    current = candidate;
    if (hull.size() > n + 1) break;  // safety against degenerate loops
  } while (current != start);
  return hull;
}

// Largest eigenvalue and eigenvector of the flow at t, the direct oracle for
// tracked path states.
inline std::pair<double, fovflow::Vector> top_eigenpair(const HermitianFlow& flow,
                                                        double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      fovflow::hermitize(fovflow::flow_eval(flow, t)));
  const Index n = flow.size();
  return {solver.eigenvalues()(n - 1), solver.eigenvectors().col(n - 1)};
}

}  // namespace oracles
