#pragma once

#include <stdexcept>
#include <string>

namespace fovflow {

/// Malformed user input: bad files, bad dimensions, bad parameters.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not complete: eigensolver failure,
/// near-singular path-following system, no convergent formula found.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fovflow
