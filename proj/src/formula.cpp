#include "fovflow/formula.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace fovflow {

namespace {

constexpr double kRootMargin = 1e-8;

// Condition matrix: row j states  sum_i a_i (-i)^j + b [j==1]  =  1.
RealMatrix condition_matrix(int states, int orders) {
  RealMatrix C(orders, states + 1);
  for (int j = 0; j < orders; ++j) {
    for (int i = 0; i < states; ++i) {
      C(j, i) = (j == 0) ? 1.0 : std::pow(static_cast<double>(-i), j);
    }
    C(j, states) = (j == 1) ? 1.0 : 0.0;
  }
  return C;
}

// Condition residuals in extended precision; u = (a_0..a_{m-1}, b).
RealVector residuals_ld(const RealVector& u, int orders) {
  const int states = static_cast<int>(u.size()) - 1;
  RealVector r(orders);
  for (int j = 0; j < orders; ++j) {
    long double acc = -1.0L;
    for (int i = 0; i < states; ++i) {
      long double power = 1.0L;
      for (int q = 0; q < j; ++q) power *= static_cast<long double>(-i);
      acc += static_cast<long double>(u(i)) * power;
    }
    if (j == 1) acc += static_cast<long double>(u(states));
    r(j) = static_cast<double>(acc);
  }
  return r;
}

using Solver = Eigen::CompleteOrthogonalDecomposition<RealMatrix>;

// Two rounds of residual correction keep every condition satisfied to
// near machine precision despite the poorly scaled Vandermonde rows.
void refine(RealVector& u, const Solver& cod, int orders) {
  for (int round = 0; round < 2; ++round) {
    const RealVector r = residuals_ld(u, orders);
    u -= cod.solve(r);
  }
}

double extraneous_modulus_or_inf(const RealVector& weights) {
  const double value = max_extraneous_root(weights);
  return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

struct Family {
  RealVector particular;  // satisfies the conditions
  RealMatrix kernel;      // orthonormal basis of the free directions
  int dof = 0;
};

double family_objective(const Family& fam, const RealVector& theta) {
  RealVector u = fam.particular;
  if (fam.dof > 0) u += fam.kernel * theta;
  return extraneous_modulus_or_inf(u.head(u.size() - 1));
}

// Deterministic compass search; the objective (a max of root moduli) is
// continuous but not smooth, which pattern search tolerates.
RealVector compass_minimize(const Family& fam, RealVector theta, double step) {
  double best = family_objective(fam, theta);
  while (step > 1e-10) {
    bool improved = false;
    for (int d = 0; d < fam.dof; ++d) {
      for (double sign : {1.0, -1.0}) {
        RealVector probe = theta;
        probe(d) += sign * step;
        const double value = family_objective(fam, probe);
        if (value < best) {
          best = value;
          theta = probe;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return theta;
}

std::optional<FormulaCoeffs> try_derive(int k, int s, int orders) {
  const int states = k + s;
  if (orders > states + 1) return std::nullopt;

  const RealMatrix C = condition_matrix(states, orders);
  const RealVector rhs = RealVector::Ones(orders);
  Solver cod(C);
  if (cod.rank() < orders) return std::nullopt;

  Family fam;
  fam.particular = cod.solve(rhs);
  refine(fam.particular, cod, orders);
  fam.dof = states + 1 - orders;
  if (fam.dof > 0) {
    Eigen::FullPivLU<RealMatrix> lu(C);
    const RealMatrix raw_kernel = lu.kernel();
    Eigen::HouseholderQR<RealMatrix> qr(raw_kernel);
    fam.kernel = qr.householderQ() * RealMatrix::Identity(states + 1, fam.dof);
  }

  RealVector best_theta = RealVector::Zero(fam.dof);
  double best_value = family_objective(fam, best_theta);

  if (fam.dof > 0) {
    // Coarse grid over the free directions.
    const std::vector<double> ticks = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    std::vector<int> digit(fam.dof, 0);
    const int base = static_cast<int>(ticks.size());
    long total = 1;
    for (int d = 0; d < fam.dof; ++d) total *= base;
    for (long it = 0; it < total; ++it) {
      long rest = it;
      RealVector theta(fam.dof);
      for (int d = 0; d < fam.dof; ++d) {
        theta(d) = ticks[static_cast<std::size_t>(rest % base)];
        rest /= base;
      }
      const double value = family_objective(fam, theta);
      if (value < best_value) {
        best_value = value;
        best_theta = theta;
      }
    }
    // Seeded random sprinkling widens the net beyond the grid box.
    std::mt19937_64 gen(0x5eedf0f5u);
    std::uniform_real_distribution<double> span(-4.0, 4.0);
    for (int it = 0; it < 3000; ++it) {
      RealVector theta(fam.dof);
      for (int d = 0; d < fam.dof; ++d) theta(d) = span(gen);
      const double value = family_objective(fam, theta);
      if (value < best_value) {
        best_value = value;
        best_theta = theta;
      }
    }
    best_theta = compass_minimize(fam, best_theta, 0.25);
    best_value = family_objective(fam, best_theta);
  }

  RealVector u = fam.particular;
  if (fam.dof > 0) u += fam.kernel * best_theta;
  refine(u, cod, orders);

  const double extraneous = extraneous_modulus_or_inf(u.head(states));
  if (!(extraneous <= 1.0 - kRootMargin)) return std::nullopt;

  FormulaCoeffs formula;
  formula.k = k;
  formula.s = s;
  formula.state_weights = u.head(states);
  formula.derivative_weight = u(states);
  formula.truncation_order = orders;
  formula.stability_margin = 1.0 - extraneous;
  return formula;
}

}  // namespace

std::vector<Complex> characteristic_roots(const RealVector& state_weights) {
  const Index m = state_weights.size();
  if (m == 1) return {Complex(state_weights(0), 0.0)};
  RealMatrix companion = RealMatrix::Zero(m, m);
  companion.row(0) = state_weights.transpose();
  companion.block(1, 0, m - 1, m - 1).setIdentity();
  Eigen::EigenSolver<RealMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("characteristic_roots: eigensolver failure");
  std::vector<Complex> roots(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

double max_extraneous_root(const RealVector& state_weights) {
  const auto roots = characteristic_roots(state_weights);
  std::size_t principal = 0;
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double d = std::abs(roots[i] - Complex(1.0, 0.0));
    if (d < nearest) {
      nearest = d;
      principal = i;
    }
  }
  if (nearest > 1e-6) return std::numeric_limits<double>::quiet_NaN();
  double worst = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != principal) worst = std::max(worst, std::abs(roots[i]));
  return worst;
}

RealVector taylor_residuals(const FormulaCoeffs& formula, int count) {
  RealVector u(formula.state_weights.size() + 1);
  u.head(formula.state_weights.size()) = formula.state_weights;
  u(formula.state_weights.size()) = formula.derivative_weight;
  return residuals_ld(u, count);
}

FormulaCoeffs derive_lookahead_formula(int k, int s) {
  if (k < 1 || s < 1)
    throw InputError("derive_lookahead_formula: k and s must be >= 1");
  for (int orders = k + 2; orders >= k + 1; --orders) {
    if (auto formula = try_derive(k, s, orders)) return *formula;
  }
  throw NumericalError("derive_lookahead_formula: no convergent formula of type " +
                       std::to_string(k) + "_" + std::to_string(s) +
                       "; lower k or raise s");
}

const FormulaCoeffs& formula_4_5() {
  static const FormulaCoeffs formula = derive_lookahead_formula(4, 5);
  return formula;
}

}  // namespace fovflow
