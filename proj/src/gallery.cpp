#include "fovflow/gallery.hpp"

#include <cmath>
#include <numeric>

namespace fovflow {

namespace {

Matrix jordan_block(Index n, Complex eigenvalue) {
  Matrix J = Matrix::Zero(n, n);
  J.diagonal().setConstant(eigenvalue);
  for (Index i = 0; i + 1 < n; ++i) J(i, i + 1) = Complex(1.0, 0.0);
  return J;
}

// Jordan block with a small corner entry closing the cycle.
Matrix forsythe_block(Index n, double corner) {
  Matrix F = jordan_block(n, Complex(0.0, 0.0));
  F(n - 1, 0) = Complex(corner, 0.0);
  return F;
}

// alpha I plus the skew coupling [[0, -D], [D, 0]], D = diag(1..m); normal
// with eigenvalues alpha +- i k on the vertical line through alpha.
Matrix hanowa_block(Index n, double alpha) {
  if (n < 2 || n % 2 != 0)
    throw InputError("hanowa-like: dimension must be even and >= 2");
  const Index m = n / 2;
  Matrix A = Matrix::Zero(n, n);
  A.diagonal().setConstant(Complex(alpha, 0.0));
  for (Index i = 0; i < m; ++i) {
    A(i, m + i) = Complex(-static_cast<double>(i + 1), 0.0);
    A(m + i, i) = Complex(static_cast<double>(i + 1), 0.0);
  }
  return A;
}

// Symmetric tridiagonal with diagonal |i - (n-1)/2| and unit off-diagonals.
Matrix wilkinson_block(Index n) {
  Matrix W = Matrix::Zero(n, n);
  const double center = 0.5 * static_cast<double>(n - 1);
  for (Index i = 0; i < n; ++i)
    W(i, i) = Complex(std::abs(static_cast<double>(i) - center), 0.0);
  for (Index i = 0; i + 1 < n; ++i) {
    W(i, i + 1) = Complex(1.0, 0.0);
    W(i + 1, i) = Complex(1.0, 0.0);
  }
  return W;
}

Matrix hilbert_block(Index n) {
  Matrix H(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      H(i, j) = Complex(1.0 / static_cast<double>(i + j + 1), 0.0);
  return H;
}

Matrix clement_block(Index n) {
  Matrix C = Matrix::Zero(n, n);
  for (Index j = 1; j < n; ++j) {
    C(j, j - 1) = Complex(static_cast<double>(j), 0.0);
    C(j - 1, j) = Complex(static_cast<double>(n - j), 0.0);
  }
  return C;
}

Matrix place_blocks(const std::vector<Matrix>& blocks) {
  Index n = 0;
  for (const Matrix& block : blocks) n += block.rows();
  Matrix B = Matrix::Zero(n, n);
  Index offset = 0;
  for (const Matrix& block : blocks) {
    B.block(offset, offset, block.rows(), block.cols()) = block;
    offset += block.rows();
  }
  return B;
}

Matrix block_random(const GallerySpec& spec) {
  if (spec.block_sizes.empty())
    throw InputError("block-random: block size list must not be empty");
  Index total = 0;
  for (Index size : spec.block_sizes) {
    if (size <= 0) throw InputError("block-random: block sizes must be positive");
    total += size;
  }
  if (spec.n != 0 && spec.n != total)
    throw InputError("block-random: block sizes sum to " +
                     std::to_string(total) + ", not n = " +
                     std::to_string(spec.n));

  NormalStream stream(spec.seed);
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (std::size_t j = 0; j < spec.block_sizes.size(); ++j) {
    const Index m = spec.block_sizes[j];
    const Matrix G = stream.real_matrix(m, m).cast<Complex>();
    Matrix block;
    switch (j % 3) {
      case 0:
        block = Complex(0.0, 1.0) * G;
        break;
      case 1:
        block = -G;
        block.diagonal().array() -= Complex(3.0, -2.0);
        break;
      default:
        block = G;
        break;
    }
    blocks.push_back(std::move(block));
  }
  return place_blocks(blocks);
}

Matrix paper_52_recipe() {
  const double corner = std::sqrt(std::numeric_limits<double>::epsilon());
  std::vector<Matrix> blocks;
  blocks.push_back(-2.0 * Matrix::Identity(2, 2));
  blocks.push_back(forsythe_block(6, corner));
  blocks.push_back(jordan_block(8, Complex(1.0, -1.0)));
  blocks.push_back(Matrix::Zero(3, 3));
  blocks.push_back(hanowa_block(8, -1.0));
  blocks.push_back(wilkinson_block(12));
  blocks.push_back(hilbert_block(9));
  blocks.push_back(jordan_block(4, Complex(1.0, 1.0)).adjoint());
  return place_blocks(blocks);
}

}  // namespace

Matrix gallery(const GallerySpec& spec) {
  Matrix B;
  switch (spec.family) {
    case GalleryFamily::block_random:
      B = block_random(spec);
      break;
    case GalleryFamily::jordan:
      if (spec.n < 1) throw InputError("jordan: dimension must be positive");
      B = jordan_block(spec.n, spec.eigenvalue);
      break;
    case GalleryFamily::clement_like:
      if (spec.n < 2) throw InputError("clement-like: dimension must be >= 2");
      B = clement_block(spec.n);
      break;
    case GalleryFamily::hanowa_like:
      B = hanowa_block(spec.n, spec.alpha);
      break;
    case GalleryFamily::paper_52:
      if (spec.n != 0 && spec.n != 52)
        throw InputError("paper-52: the dimension is fixed at 52");
      B = paper_52_recipe();
      break;
  }
  if (spec.bare) return B;
  const Matrix Q = random_unitary(B.rows(), spec.seed);
  return Q.adjoint() * B * Q;
}

GalleryFamily parse_gallery_family(std::string_view name) {
  if (name == "block-random") return GalleryFamily::block_random;
  if (name == "jordan") return GalleryFamily::jordan;
  if (name == "clement-like") return GalleryFamily::clement_like;
  if (name == "hanowa-like") return GalleryFamily::hanowa_like;
  if (name == "paper-52") return GalleryFamily::paper_52;
  throw InputError("unknown gallery family '" + std::string(name) + "'");
}

std::string gallery_family_name(GalleryFamily family) {
  switch (family) {
    case GalleryFamily::block_random: return "block-random";
    case GalleryFamily::jordan: return "jordan";
    case GalleryFamily::clement_like: return "clement-like";
    case GalleryFamily::hanowa_like: return "hanowa-like";
    case GalleryFamily::paper_52: return "paper-52";
  }
  return "unknown";
}

std::pair<double, double> speedup_bounds(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw InputError("speedup_bounds: alpha must lie in (0, 1]");
  const double best = alpha * alpha * alpha;
  const double worst = alpha <= 0.5
                           ? alpha * alpha
                           : best + (1.0 - alpha) * (1.0 - alpha) * (1.0 - alpha);
  return {best, worst};
}

}  // namespace fovflow
