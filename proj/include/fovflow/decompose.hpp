#pragma once

#include <utility>
#include <vector>

#include "fovflow/core.hpp"

namespace fovflow {

/// Zero-nonzero structure of a hermitean matrix: symmetric boolean mask with
/// an all-true diagonal.  true = structurally nonzero.
struct ZeroPattern {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

  Index size() const { return mask.rows(); }
};

/// Result of the unitary block-diagonalization attempt.
///
/// `unitary` has its columns regrouped so that U^*AU is block diagonal with
/// the given ordered block sizes; `blocks` are the diagonal blocks of U^*AU
/// and `residual` is the Frobenius norm of the off-block part of U^*AU
/// relative to ||A||_F.  An indecomposable matrix is reported as one block of
/// size n with residual 0.
struct Decomposition {
  Matrix unitary;
  std::vector<Index> block_sizes;
  std::vector<Matrix> blocks;
  double residual = 0.0;

  bool decomposable() const { return block_sizes.size() > 1; }
};

struct DecomposeOptions {
  double t_a = 0.31;          // generic sample angles, away from 0 and pi/2
  double t_b = 1.83;
  double tol_pattern = 1e-10; // relative threshold for the zero pattern
  double tol_verify = 1e-8;   // relative off-block residual accepted
};

/// Unitary eigendecomposition of a hermitean matrix (hermitized first).
/// Returns (V, eigenvalues ascending) with M V = V diag(evals).
std::pair<Matrix, RealVector> diagonalize_hermitian(
    const Eigen::Ref<const Matrix>& M);

/// mask[i][j] = |M(i,j)| > tol * ||M||_F off the diagonal, symmetrized by OR;
/// diagonal forced true.
ZeroPattern zero_pattern(const Eigen::Ref<const Matrix>& M, double tol);

/// Connected components of the pattern's adjacency graph, each sorted
/// ascending, components ordered by smallest member.
std::vector<std::vector<Index>> connected_components(const ZeroPattern& pattern);

/// Permute V's columns so each group is contiguous; returns the permuted
/// matrix and the group sizes.  Throws InputError if the grouping is not a
/// partition of the column indices.
std::pair<Matrix, std::vector<Index>> regroup_columns(
    const Eigen::Ref<const Matrix>& V,
    const std::vector<std::vector<Index>>& grouping);

/// || offblock(U^*AU) ||_F / ||A||_F for the block layout given by sizes.
double verify_block_structure(const Eigen::Ref<const Matrix>& A,
                              const Eigen::Ref<const Matrix>& U,
                              const std::vector<Index>& sizes);

/// Full pipeline: diagonalize one flow matrix, read the block pattern off a
/// second one, regroup, extract blocks, verify.  One retry with fresh sample
/// angles; if verification still fails the matrix is reported indecomposable.
Decomposition decompose(const Eigen::Ref<const Matrix>& A,
                        const DecomposeOptions& opt = {});

}  // namespace fovflow
