#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

#include "fovflow/errors.hpp"

namespace fovflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Hermitean and skew parts of a square matrix, A = H + iK.
/// Both parts are stored exactly hermitean: upper triangle mirrored with
/// conjugates, real diagonal.  The one-parameter flow of A is
/// cos(t) H + sin(t) K.
struct HermitianFlow {
  Matrix H;
  Matrix K;

  Index size() const { return H.rows(); }
};

/// (M + M^*)/2, exactly hermitean by construction.
Matrix hermitize(const Eigen::Ref<const Matrix>& M);

/// H = (A + A^*)/2, K = (A - A^*)/(2i).  Throws InputError on non-square input.
HermitianFlow split_hermitian(const Eigen::Ref<const Matrix>& A);

/// cos(t) H + sin(t) K.  Exactly hermitean (real combination of mirrored parts).
Matrix flow_eval(const HermitianFlow& flow, double t);

/// d/dt of the flow: -sin(t) H + cos(t) K.
Matrix flow_derivative(const HermitianFlow& flow, double t);

/// Default relative tolerance for the normality test: 100 n eps.
double normality_tolerance(Index n);

/// True iff ||A A^* - A^* A||_F <= tol * ||A||_F^2.
bool is_normal(const Eigen::Ref<const Matrix>& A, double tol);
bool is_normal(const Eigen::Ref<const Matrix>& A);

/// x^* A x for a unit vector x.  Throws InputError on dimension mismatch or
/// if ||x|| deviates from 1 by more than 1e-12.
Complex quadratic_form(const Eigen::Ref<const Matrix>& A,
                       const Eigen::Ref<const Vector>& x);

/// Deterministic stream of standard normal deviates (Box-Muller over a
/// seeded mt19937_64), independent of the platform's library distribution.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next();
  RealMatrix real_matrix(Index rows, Index cols);
  Matrix complex_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// Haar-distributed unitary matrix: QR of a seeded complex Gaussian with the
/// R diagonal phase-normalized so the result is unique per seed.
Matrix random_unitary(Index n, std::uint64_t seed);

}  // namespace fovflow
