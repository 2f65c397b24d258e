#pragma once

#include <deque>
#include <vector>

#include "fovflow/core.hpp"
#include "fovflow/formula.hpp"

namespace fovflow {

/// Stepping parameters of the discretized path follower.
struct ZnnConfig {
  double tau = 2e-4;    // sampling gap in radians
  double eta = 100.0;   // exponential decay constant of the error dynamics
  FormulaCoeffs formula = formula_4_5();
  Index fallback_grid = 0;  // dense-grid fallback density; 0 = match the path

  int startup_count() const { return formula.k + formula.s; }
};

/// One sample of the tracked extreme eigencurve.
struct PathSample {
  double t = 0.0;
  double lambda = 0.0;
  Vector x;
};

/// State of the path follower: the newest eigenpair estimate plus the ring
/// of the last k+s samples the look-ahead rule consumes.
struct EigenPathState {
  double t = 0.0;
  double lambda = 0.0;
  Vector x;
  std::deque<PathSample> history;  // oldest first; back() mirrors (t, lambda, x)
};

/// Derivative-level system M z = r for z = (xdot, lambdadot):
///   M = [[F - lambda I, -x], [x^*, 0]]
///   r = [-Fdot x - eta (F x - lambda x);  -eta (x^*x - 1)/2]
/// so the eigen-residual and the normalization error both decay as
/// exp(-eta t).
struct ZnnSystem {
  Matrix M;
  Vector r;
};

ZnnSystem znn_system(const Eigen::Ref<const Matrix>& F,
                     const Eigen::Ref<const Matrix>& Fdot,
                     const EigenPathState& state, double eta);

/// Builds the path state from startup samples (keeps the newest k+s).
EigenPathState make_path_state(const std::vector<PathSample>& samples,
                               const ZnnConfig& cfg);

/// One step with explicit system matrices (the flow frozen at the caller's
/// values).  Throws NumericalError when the system is near singular, which
/// signals an eigencurve coalescence.
EigenPathState znn_step_with(const EigenPathState& state,
                             const Eigen::Ref<const Matrix>& F,
                             const Eigen::Ref<const Matrix>& Fdot,
                             const ZnnConfig& cfg);

/// One step of the tracked flow: solve at state.t, advance to t + tau via
/// the look-ahead rule, renormalize, rotate the history.
EigenPathState znn_step(const EigenPathState& state, const HermitianFlow& flow,
                        const ZnnConfig& cfg);

/// Full eigendecompositions at t = 0, tau, ..., (k+s-1) tau; returns the
/// largest eigenpair at each, with eigenvector phases aligned to the
/// previous sample so the discrete path starts out continuous.
std::vector<PathSample> startup_eigendata(const HermitianFlow& flow,
                                          const ZnnConfig& cfg);

/// Tracks the maximum eigencurve of the flow from 0 to t_end (default one
/// full turn).  The step count is round(t_end / tau), so the internal gap is
/// snapped slightly to land exactly on t_end.  For a full turn the final
/// state must close up on the initial one; failure to do so throws
/// NumericalError and the caller falls back to the dense grid.
std::vector<PathSample> track_extreme_eigencurve(const HermitianFlow& flow,
                                                 const ZnnConfig& cfg,
                                                 double t_end = 2.0 * M_PI);

}  // namespace fovflow
