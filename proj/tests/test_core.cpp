#include <doctest.h>

#include <cmath>

#include "fovflow/core.hpp"

using namespace fovflow;

namespace {

Matrix random_complex(Index n, std::uint64_t seed) {
  NormalStream stream(seed);
  return stream.complex_matrix(n, n);
}

}  // namespace

TEST_CASE("split_hermitian of a hermitean matrix has zero skew part") {
  Matrix A = hermitize(random_complex(6, 11));
  const HermitianFlow flow = split_hermitian(A);
  CHECK(flow.K.norm() == 0.0);
  CHECK((flow.H - A).norm() == 0.0);
}

TEST_CASE("split_hermitian of iI is (0, I)") {
  const Matrix A = Complex(0, 1) * Matrix::Identity(3, 3);
  const HermitianFlow flow = split_hermitian(A);
  CHECK(flow.H.norm() == 0.0);
  CHECK((flow.K - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("split_hermitian worked 2x2 example reconstructs") {
  Matrix A(2, 2);
  A << Complex(1, 0), Complex(2, 0), Complex(0, 0), Complex(1, 0);
  const HermitianFlow flow = split_hermitian(A);
  Matrix H_expect(2, 2);
  H_expect << Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0);
  Matrix K_expect(2, 2);
  K_expect << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  CHECK((flow.H - H_expect).norm() == doctest::Approx(0.0));
  CHECK((flow.K - K_expect).norm() == doctest::Approx(0.0));
  const Matrix back = flow.H + Complex(0, 1) * flow.K;
  CHECK((back - A).norm() <= 1e-15 * A.norm());
}

TEST_CASE("split then reconstruct stays within n eps of the input") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix A = random_complex(9, seed);
    const HermitianFlow flow = split_hermitian(A);
    const Matrix back = flow.H + Complex(0, 1) * flow.K;
    CHECK((back - A).norm() <=
          9 * std::numeric_limits<double>::epsilon() * A.norm());
    // Stored parts are exactly hermitean, not merely close.
    CHECK((flow.H - flow.H.adjoint()).norm() == 0.0);
    CHECK((flow.K - flow.K.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("split_hermitian rejects non-square input") {
  Matrix A(2, 3);
  A.setZero();
  CHECK_THROWS_AS(split_hermitian(A), InputError);
}

TEST_CASE("flow_eval at 0 and pi/2 recovers the parts") {
  const HermitianFlow flow = split_hermitian(random_complex(5, 21));
  CHECK((flow_eval(flow, 0.0) - flow.H).norm() == 0.0);
  CHECK((flow_eval(flow, M_PI / 2) - flow.K).norm() <= 1e-16 * flow.K.norm());
}

TEST_CASE("flow_eval is antiperiodic and exactly hermitean") {
  const HermitianFlow flow = split_hermitian(random_complex(7, 22));
  for (double t : {0.13, 1.7, 3.9, 5.5}) {
    const Matrix F = flow_eval(flow, t);
    CHECK((F - F.adjoint()).norm() == 0.0);
    const Matrix G = flow_eval(flow, t + M_PI);
    const double entry_tol = 4 * std::numeric_limits<double>::epsilon();
    CHECK(((F + G).cwiseAbs().maxCoeff()) <=
          entry_tol * (1.0 + F.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("flow_derivative endpoints") {
  const HermitianFlow flow = split_hermitian(random_complex(5, 23));
  CHECK((flow_derivative(flow, 0.0) - flow.K).norm() == 0.0);
  CHECK((flow_derivative(flow, M_PI / 2) + flow.H).norm() <=
        1e-16 * flow.H.norm());
}

TEST_CASE("flow_derivative matches central differences at O(h^2)") {
  const HermitianFlow flow = split_hermitian(random_complex(6, 24));
  const double t = 0.83;
  const Matrix exact = flow_derivative(flow, t);
  auto central_error = [&](double h) {
    const Matrix fd = (flow_eval(flow, t + h) - flow_eval(flow, t - h)) / (2 * h);
    return (fd - exact).norm();
  };
  const double coarse = central_error(1e-4);
  const double fine = central_error(1e-5);
  CHECK(fine <= 1e-9 * flow.H.norm());
  // Second-order stencil: shrinking h tenfold cuts the error ~100x.
  CHECK(coarse / fine > 50.0);
  CHECK(coarse / fine < 200.0);
}

TEST_CASE("hermitize fixed examples") {
  Matrix M(2, 2);
  M << Complex(0, 0), Complex(2, 0), Complex(0, 0), Complex(0, 0);
  Matrix expected(2, 2);
  expected << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  CHECK((hermitize(M) - expected).norm() == 0.0);

  const Matrix H = hermitize(random_complex(5, 31));
  CHECK((hermitize(H) - H).norm() == 0.0);          // already hermitean
  CHECK((H - H.adjoint()).norm() == 0.0);           // exact symmetry
}

TEST_CASE("is_normal") {
  CHECK(is_normal(hermitize(random_complex(6, 41))));

  Matrix jordan(2, 2);
  jordan << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_FALSE(is_normal(jordan));

  // Unitary conjugation of a diagonal matrix stays normal.
  const Index n = 8;
  const Matrix Q = random_unitary(n, 42);
  Vector d(n);
  NormalStream stream(43);
  for (Index i = 0; i < n; ++i) d(i) = Complex(stream.next(), stream.next());
  const Matrix A = Q.adjoint() * d.asDiagonal() * Q;
  CHECK(is_normal(A));
}

TEST_CASE("quadratic_form basics") {
  const Index n = 4;
  Vector x = Vector::Zero(n);
  x(0) = Complex(1, 0);
  CHECK(quadratic_form(Matrix::Identity(n, n), x) == Complex(1, 0));

  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = Complex(2, 0);
  D(1, 1) = Complex(-3, 0);
  Vector e1 = Vector::Zero(2);
  e1(0) = Complex(1, 0);
  CHECK(quadratic_form(D, e1) == Complex(2, 0));

  const Matrix H = hermitize(random_complex(5, 51));
  NormalStream stream(52);
  Vector y(5);
  for (Index i = 0; i < 5; ++i) y(i) = Complex(stream.next(), stream.next());
  y.normalize();
  CHECK(std::abs(quadratic_form(H, y).imag()) <= 1e-14 * H.norm());

  CHECK_THROWS_AS(quadratic_form(H, e1), InputError);     // dimension mismatch
  Vector long_vec = 2.0 * y;
  CHECK_THROWS_AS(quadratic_form(H, long_vec), InputError);  // not unit
}

TEST_CASE("quadratic_form is unitarily invariant at the vector level") {
  const Index n = 6;
  const Matrix A = random_complex(n, 61);
  const Matrix U = random_unitary(n, 62);
  NormalStream stream(63);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = Complex(stream.next(), stream.next());
  x.normalize();
  const Complex lhs = quadratic_form(U.adjoint() * A * U, x);
  const Complex rhs = quadratic_form(A, (U * x).eval());
  CHECK(std::abs(lhs - rhs) <= 1e-12 * A.norm());
}

TEST_CASE("random_unitary contract") {
  const Matrix tiny = random_unitary(1, 7);
  CHECK(std::abs(std::abs(tiny(0, 0)) - 1.0) <= 1e-14);

  const Index n = 15;
  const Matrix U = random_unitary(n, 7);
  CHECK((U.adjoint() * U - Matrix::Identity(n, n)).norm() <= n * 1e-13);

  const Matrix V = random_unitary(n, 7);
  CHECK((U - V).norm() == 0.0);  // bit-identical per seed

  const Matrix W = random_unitary(n, 8);
  CHECK((U - W).norm() > 1e-3);
}
