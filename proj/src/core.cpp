#include "fovflow/core.hpp"

#include <cmath>
#include <limits>

namespace fovflow {

namespace {

void require_square(const Eigen::Ref<const Matrix>& M, const char* who) {
  if (M.rows() != M.cols())
    throw InputError(std::string(who) + ": matrix must be square, got " +
                     std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

}  // namespace

Matrix hermitize(const Eigen::Ref<const Matrix>& M) {
  require_square(M, "hermitize");
  const Index n = M.rows();
  Matrix H(n, n);
  for (Index j = 0; j < n; ++j) {
    H(j, j) = Complex(M(j, j).real(), 0.0);
    for (Index i = 0; i < j; ++i) {
      const Complex v = 0.5 * (M(i, j) + std::conj(M(j, i)));
      H(i, j) = v;
      H(j, i) = std::conj(v);
    }
  }
  return H;
}

HermitianFlow split_hermitian(const Eigen::Ref<const Matrix>& A) {
  require_square(A, "split_hermitian");
  const Index n = A.rows();
  HermitianFlow flow{Matrix(n, n), Matrix(n, n)};
  for (Index j = 0; j < n; ++j) {
    flow.H(j, j) = Complex(A(j, j).real(), 0.0);
    flow.K(j, j) = Complex(A(j, j).imag(), 0.0);
    for (Index i = 0; i < j; ++i) {
      const Complex h = 0.5 * (A(i, j) + std::conj(A(j, i)));
      const Complex k = Complex(0.0, -0.5) * (A(i, j) - std::conj(A(j, i)));
      flow.H(i, j) = h;
      flow.H(j, i) = std::conj(h);
      flow.K(i, j) = k;
      flow.K(j, i) = std::conj(k);
    }
  }
  return flow;
}

Matrix flow_eval(const HermitianFlow& flow, double t) {
  return std::cos(t) * flow.H + std::sin(t) * flow.K;
}

Matrix flow_derivative(const HermitianFlow& flow, double t) {
  return -std::sin(t) * flow.H + std::cos(t) * flow.K;
}

double normality_tolerance(Index n) {
  return 100.0 * static_cast<double>(n) *
         std::numeric_limits<double>::epsilon();
}

bool is_normal(const Eigen::Ref<const Matrix>& A, double tol) {
  require_square(A, "is_normal");
  const Matrix commutator = A * A.adjoint() - A.adjoint() * A;
  return commutator.norm() <= tol * A.squaredNorm();
}

bool is_normal(const Eigen::Ref<const Matrix>& A) {
  return is_normal(A, normality_tolerance(A.rows()));
}

Complex quadratic_form(const Eigen::Ref<const Matrix>& A,
                       const Eigen::Ref<const Vector>& x) {
  require_square(A, "quadratic_form");
  if (A.rows() != x.size())
    throw InputError("quadratic_form: dimension mismatch, matrix " +
                     std::to_string(A.rows()) + ", vector " +
                     std::to_string(x.size()));
  if (std::abs(x.norm() - 1.0) > 1e-12)
    throw InputError("quadratic_form: vector is not unit length");
  return x.dot(A * x);  // Eigen's dot conjugates the first argument
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; fixed algorithm so a seed reproduces bit-identically anywhere.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u1 = 0.0;
  do {
    u1 = unit(gen_);
  } while (u1 <= 0.0);
  const double u2 = unit(gen_);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RealMatrix NormalStream::real_matrix(Index rows, Index cols) {
  RealMatrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = next();
  return M;
}

Matrix NormalStream::complex_matrix(Index rows, Index cols) {
  Matrix M(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = next();
      const double im = next();
      M(i, j) = scale * Complex(re, im);
    }
  return M;
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw InputError("random_unitary: dimension must be positive");
  NormalStream stream(seed);
  const Matrix G = stream.complex_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex r = R(j, j);
    const double m = std::abs(r);
    Q.col(j) *= (m > 0.0) ? r / m : Complex(1.0, 0.0);
  }
  return Q;
}

}  // namespace fovflow
