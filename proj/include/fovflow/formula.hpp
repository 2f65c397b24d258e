#pragma once

#include <vector>

#include "fovflow/core.hpp"

namespace fovflow {

/// Convergent look-ahead finite difference rule of type k_s:
///
///   x_{j+1} = sum_{i=0}^{k+s-1} state_weights[i] * x_{j-i}
///             + derivative_weight * tau * xdot_j
///
/// The weights satisfy the Taylor-matching conditions of orders
/// 0 .. truncation_order-1, so the local truncation error is
/// O(tau^truncation_order).  All extraneous characteristic roots lie
/// strictly inside the unit disk; stability_margin is 1 minus the largest
/// extraneous root modulus.
struct FormulaCoeffs {
  int k = 0;
  int s = 0;
  RealVector state_weights;        // newest state first, size k+s
  double derivative_weight = 0.0;
  int truncation_order = 0;
  double stability_margin = 0.0;
};

/// Solves the Taylor-matching system for type k_s and picks, inside the
/// solution family, the member minimizing the largest extraneous
/// characteristic-root modulus (coarse grid search plus local refinement).
/// When the fully matched system admits no member with extraneous roots
/// strictly inside the unit disk (the zero-stability freedom is exhausted,
/// as for 1_1), the highest-order condition is dropped once and the search
/// repeats, trading one order of accuracy for strict convergence.
/// Throws NumericalError when no convergent member exists at all.
FormulaCoeffs derive_lookahead_formula(int k, int s);

/// The 4_5 rule used as the default path-following formula, derived once
/// and cached.
const FormulaCoeffs& formula_4_5();

/// Roots of zeta^m - w[0] zeta^{m-1} - ... - w[m-1] via the companion matrix.
std::vector<Complex> characteristic_roots(const RealVector& state_weights);

/// Largest root modulus after removing the principal root (the one nearest 1).
double max_extraneous_root(const RealVector& state_weights);

/// Residuals of the Taylor-matching conditions of orders 0..count-1,
/// accumulated in extended precision.
RealVector taylor_residuals(const FormulaCoeffs& formula, int count);

}  // namespace fovflow
