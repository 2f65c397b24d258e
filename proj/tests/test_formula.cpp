#include <doctest.h>

#include <cmath>

#include "fovflow/formula.hpp"

using namespace fovflow;

namespace {

// Predict x(t + tau) for samples of a scalar function with known derivative
// and return the absolute prediction error.
double prediction_error(const FormulaCoeffs& f, double t, double tau) {
  const int m = f.k + f.s;
  long double acc = 0.0L;
  for (int i = 0; i < m; ++i)
    acc += static_cast<long double>(f.state_weights(i)) *
           std::exp(static_cast<long double>(t - i * tau));
  acc += static_cast<long double>(f.derivative_weight) * tau *
         std::exp(static_cast<long double>(t));
  return std::abs(static_cast<double>(acc) - std::exp(t + tau));
}

}  // namespace

TEST_CASE("type 1_1 degenerates to forward Euler") {
  const FormulaCoeffs f = derive_lookahead_formula(1, 1);
  REQUIRE(f.state_weights.size() == 2);
  CHECK(f.state_weights(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(f.state_weights(1)) <= 1e-12);
  CHECK(f.derivative_weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.truncation_order == 2);
  CHECK(f.stability_margin > 0.5);
}

TEST_CASE("type 4_5 satisfies all Taylor conditions and the root condition") {
  const FormulaCoeffs f = derive_lookahead_formula(4, 5);
  REQUIRE(f.state_weights.size() == 9);
  CHECK(f.truncation_order == 6);

  // Taylor matching, recomputed here in extended precision.
  for (int order = 0; order < 6; ++order) {
    long double acc = -1.0L;
    for (int i = 0; i < 9; ++i) {
      long double power = 1.0L;
      for (int q = 0; q < order; ++q) power *= static_cast<long double>(-i);
      acc += static_cast<long double>(f.state_weights(i)) * power;
    }
    if (order == 1) acc += static_cast<long double>(f.derivative_weight);
    CHECK(std::abs(static_cast<double>(acc)) <= 1e-12);
  }

  // Root condition via an independent companion-matrix scan.
  const auto roots = characteristic_roots(f.state_weights);
  REQUIRE(roots.size() == 9);
  int boundary_roots = 0;
  for (const Complex& root : roots) {
    CHECK(std::abs(root) <= 1.0 + 1e-10);
    if (std::abs(root) > 1.0 - 1e-8) ++boundary_roots;
  }
  CHECK(boundary_roots == 1);  // only the principal root at 1
  CHECK(f.stability_margin >= 1e-8);
  CHECK(max_extraneous_root(f.state_weights) ==
        doctest::Approx(1.0 - f.stability_margin));
}

TEST_CASE("library-reported residuals agree with the invariant") {
  for (auto [k, s] : {std::pair{4, 5}, std::pair{2, 2}, std::pair{3, 3}}) {
    const FormulaCoeffs f = derive_lookahead_formula(k, s);
    const RealVector r = taylor_residuals(f, f.truncation_order);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(f.stability_margin >= 1e-8);
  }
}

TEST_CASE("4_5 prediction error on exp(t) decays at sixth order") {
  const FormulaCoeffs f = derive_lookahead_formula(4, 5);

  // At tau = 1e-3 the prediction reproduces the sample to rounding level.
  CHECK(prediction_error(f, 0.4, 1e-3) <= 1e-13);

  // Order sweep where the truncation term dominates rounding: halving tau
  // divides the local error by about 2^6.
  const double coarse = prediction_error(f, 0.4, 0.08);
  const double fine = prediction_error(f, 0.4, 0.04);
  CHECK(coarse > 1e-10);
  const double ratio = coarse / fine;
  CHECK(ratio > 40.0);
  CHECK(ratio < 100.0);
}

TEST_CASE("derivation input validation") {
  CHECK_THROWS_AS(derive_lookahead_formula(0, 3), InputError);
  CHECK_THROWS_AS(derive_lookahead_formula(3, 0), InputError);
}

TEST_CASE("cached default formula is the 4_5 rule") {
  const FormulaCoeffs& f = formula_4_5();
  CHECK(f.k == 4);
  CHECK(f.s == 5);
  CHECK(f.truncation_order == 6);
}
