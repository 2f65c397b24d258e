#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fovflow/core.hpp"

namespace fovflow {

enum class GalleryFamily {
  block_random,  // seeded Gaussian diagonal blocks, cycled complex treatments
  jordan,        // single Jordan block with a given eigenvalue
  clement_like,  // tridiagonal, zero diagonal, sub/super diagonals j and n-j
  hanowa_like,   // normal 2m x 2m: alpha I plus skew coupling +-diag(1..m)
  paper_52,      // 52 x 52 composite of classic test blocks
};

struct GallerySpec {
  GalleryFamily family = GalleryFamily::block_random;
  Index n = 0;  // optional for block-random (derived from the block sizes)
  std::uint64_t seed = 1;
  std::vector<Index> block_sizes;  // block-random only
  Complex eigenvalue{0.0, 0.0};    // jordan only
  double alpha = -1.0;             // hanowa-like only
  bool bare = false;               // skip the hiding unitary similarity
};

/// Builds the block-diagonal recipe matrix B for the family, then returns
/// Q^* B Q for a seeded random unitary Q (or B itself when bare).
Matrix gallery(const GallerySpec& spec);

GalleryFamily parse_gallery_family(std::string_view name);
std::string gallery_family_name(GalleryFamily family);

/// Theoretical cost fractions of block-wise versus full O(n^3) processing
/// for a matrix whose largest diagonal block has relative size alpha = m/n.
/// Best case: one m-block and the rest 1x1 -> alpha^3.  Worst case:
/// floor(n/m) blocks of size m -> alpha^2 for alpha <= 1/2, and one m-block
/// plus one (n-m)-block -> alpha^3 + (1-alpha)^3 for alpha > 1/2.
std::pair<double, double> speedup_bounds(double alpha);

}  // namespace fovflow
