#pragma once

#include <string>

#include "fovflow/core.hpp"

namespace fovflow {

/// Reads a square complex matrix from either Matrix Market array format
/// ("matrix array complex general" or "matrix array real general") or the
/// CSV alternative (header "n=<dim>", then n^2 rows "re,im", row-major).
/// Parse failures throw InputError naming the offending line.
Matrix read_matrix(const std::string& path);

/// Matrix Market "array complex general", 17 significant digits,
/// column-major entries.
void write_matrix_market(const Eigen::Ref<const Matrix>& A,
                         const std::string& path);

/// CSV alternative: "n=<dim>" header, then one "re,im" row per entry,
/// row-major, 17 significant digits.
void write_matrix_csv(const Eigen::Ref<const Matrix>& A,
                      const std::string& path);

/// Dispatches on the extension: ".csv" writes the CSV form, anything else
/// Matrix Market.
void write_matrix(const Eigen::Ref<const Matrix>& A, const std::string& path);

}  // namespace fovflow
