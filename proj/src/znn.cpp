#include "fovflow/znn.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace fovflow {

namespace {

// Condition trip point: cond(M) > 1e-3 / eps flags a coalescing eigencurve.
constexpr double kRcondFloor = std::numeric_limits<double>::epsilon() / 1e-3;

void align_phase(const Vector& previous, Vector& x) {
  const Complex overlap = previous.dot(x);
  const double magnitude = std::abs(overlap);
  if (magnitude > 0.0) x *= std::conj(overlap) / magnitude;
}

void canonical_phase(Vector& x) {
  Index pivot = 0;
  x.cwiseAbs().maxCoeff(&pivot);
  const Complex lead = x(pivot);
  const double magnitude = std::abs(lead);
  if (magnitude > 0.0) x *= std::conj(lead) / magnitude;
}

}  // namespace

ZnnSystem znn_system(const Eigen::Ref<const Matrix>& F,
                     const Eigen::Ref<const Matrix>& Fdot,
                     const EigenPathState& state, double eta) {
  const Index n = F.rows();
  if (state.x.size() != n)
    throw InputError("znn_system: state dimension does not match the flow");

  ZnnSystem sys;
  sys.M.resize(n + 1, n + 1);
  sys.M.topLeftCorner(n, n) = F;
  sys.M.topLeftCorner(n, n).diagonal().array() -= state.lambda;
  sys.M.topRightCorner(n, 1) = -state.x;
  sys.M.bottomLeftCorner(1, n) = state.x.adjoint();
  sys.M(n, n) = Complex(0.0, 0.0);

  const Vector eigen_residual = F * state.x - state.lambda * state.x;
  sys.r.resize(n + 1);
  sys.r.head(n) = -(Fdot * state.x) - eta * eigen_residual;
  sys.r(n) = Complex(-0.5 * eta * (state.x.squaredNorm() - 1.0), 0.0);
  return sys;
}

EigenPathState make_path_state(const std::vector<PathSample>& samples,
                               const ZnnConfig& cfg) {
  const std::size_t needed = static_cast<std::size_t>(cfg.startup_count());
  if (samples.size() < needed)
    throw InputError("make_path_state: need " + std::to_string(needed) +
                     " startup samples, got " + std::to_string(samples.size()));
  EigenPathState state;
  for (std::size_t i = samples.size() - needed; i < samples.size(); ++i)
    state.history.push_back(samples[i]);
  state.t = state.history.back().t;
  state.lambda = state.history.back().lambda;
  state.x = state.history.back().x;
  return state;
}

EigenPathState znn_step_with(const EigenPathState& state,
                             const Eigen::Ref<const Matrix>& F,
                             const Eigen::Ref<const Matrix>& Fdot,
                             const ZnnConfig& cfg) {
  const int window = cfg.startup_count();
  if (state.history.size() < static_cast<std::size_t>(window))
    throw InputError("znn_step: history shorter than the look-ahead window");

  const Index n = state.x.size();
  const ZnnSystem sys = znn_system(F, Fdot, state, cfg.eta);
  Eigen::PartialPivLU<Matrix> lu(sys.M);
  const double rc = lu.rcond();
  // The rcond estimate alone can report a healthy value on exactly singular
  // bordered systems; the pivot spread of U catches those.
  double pivot_max = 0.0;
  double pivot_min = std::numeric_limits<double>::infinity();
  for (Index i = 0; i <= n; ++i) {
    const double pivot = std::abs(lu.matrixLU()(i, i));
    pivot_max = std::max(pivot_max, pivot);
    pivot_min = std::min(pivot_min, pivot);
  }
  const bool pivots_ok =
      pivot_min > 0.0 && pivot_max / pivot_min <= 1.0 / kRcondFloor;
  if (!(rc >= kRcondFloor) || !pivots_ok)
    throw NumericalError("znn_step: near-singular system at t = " +
                         std::to_string(state.t) +
                         "; eigencurve coalescence suspected");
  const Vector z = lu.solve(sys.r);
  if (!z.allFinite())
    throw NumericalError("znn_step: linear solve produced non-finite data at t = " +
                         std::to_string(state.t));
  const Vector xdot = z.head(n);
  const double lambdadot = z(n).real();

  const RealVector& w = cfg.formula.state_weights;
  Vector x_next = cfg.formula.derivative_weight * cfg.tau * xdot;
  double lambda_next = cfg.formula.derivative_weight * cfg.tau * lambdadot;
  const std::size_t newest = state.history.size() - 1;
  for (int i = 0; i < window; ++i) {
    const PathSample& past = state.history[newest - static_cast<std::size_t>(i)];
    x_next += w(i) * past.x;
    lambda_next += w(i) * past.lambda;
  }

  const double norm = x_next.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw NumericalError("znn_step: eigenvector update collapsed at t = " +
                         std::to_string(state.t));
  x_next /= norm;

  EigenPathState next;
  next.t = state.t + cfg.tau;
  next.lambda = lambda_next;
  next.x = x_next;
  next.history = state.history;
  next.history.push_back(PathSample{next.t, next.lambda, next.x});
  while (next.history.size() > static_cast<std::size_t>(window))
    next.history.pop_front();
  return next;
}

EigenPathState znn_step(const EigenPathState& state, const HermitianFlow& flow,
                        const ZnnConfig& cfg) {
  return znn_step_with(state, flow_eval(flow, state.t),
                       flow_derivative(flow, state.t), cfg);
}

std::vector<PathSample> startup_eigendata(const HermitianFlow& flow,
                                          const ZnnConfig& cfg) {
  const int count = cfg.startup_count();
  std::vector<PathSample> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double t = static_cast<double>(j) * cfg.tau;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(flow_eval(flow, t)));
    if (solver.info() != Eigen::Success)
      throw NumericalError("startup_eigendata: eigensolver failed at t = " +
                           std::to_string(t));
    const Index n = flow.size();
    PathSample sample;
    sample.t = t;
    sample.lambda = solver.eigenvalues()(n - 1);
    sample.x = solver.eigenvectors().col(n - 1);
    if (j == 0)
      canonical_phase(sample.x);
    else
      align_phase(samples.back().x, sample.x);
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::vector<PathSample> track_extreme_eigencurve(const HermitianFlow& flow,
                                                 const ZnnConfig& cfg,
                                                 double t_end) {
  if (!(t_end > 0.0) || !(cfg.tau > 0.0))
    throw InputError("track_extreme_eigencurve: t_end and tau must be positive");

  const int window = cfg.startup_count();
  // Snap the gap so the uniform grid lands exactly on t_end.
  const Index steps =
      std::max<Index>(static_cast<Index>(std::llround(t_end / cfg.tau)),
                      window + 1);
  ZnnConfig used = cfg;
  used.tau = t_end / static_cast<double>(steps);

  std::vector<PathSample> samples = startup_eigendata(flow, used);
  samples.reserve(static_cast<std::size_t>(steps) + 1);

  EigenPathState state = make_path_state(samples, used);
  for (Index j = window - 1; j < steps; ++j) {
    state = znn_step(state, flow, used);
    samples.push_back(PathSample{state.t, state.lambda, state.x});
  }

  const bool full_turn = std::abs(t_end - 2.0 * M_PI) < 1e-9;
  if (full_turn) {
    const double drift = std::abs(samples.back().lambda - samples.front().lambda);
    if (drift > 1e-8 * (1.0 + std::abs(samples.front().lambda)))
      throw NumericalError(
          "track_extreme_eigencurve: path failed to close after a full turn "
          "(drift " + std::to_string(drift) + ")");
  }
  return samples;
}

}  // namespace fovflow
