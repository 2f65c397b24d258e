#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fovflow/fov.hpp"

namespace fovflow {

/// Depository CSV: columns block_id, t (empty for eigenvalue points), re,
/// im, on_hull; 17 significant digits; rows ordered by block then angle.
/// Hull vertices additionally go to "<path>.hull.csv" in counterclockwise
/// order.
void write_boundary_csv(const FovResult& result, const std::string& path);

struct SvgOptions {
  bool show_blocks = true;  // per-block coloring of the point polylines
};

/// Static SVG of the boundary points and the global hull.  Curve geometry is
/// written in data coordinates inside a single scaling group (equal aspect);
/// long polylines are decimated for plotting with the bounding-box extremes
/// kept.  Output is byte-deterministic for a given result.
void write_fov_svg(const FovResult& result, const std::string& path,
                   const SvgOptions& options = {});

/// Eigencurve CSV: header t,lambda_1..lambda_n, one row per grid angle,
/// eigenvalues ascending across the whole spectrum.
void write_eigencurves_csv(const EigencurveData& data, const std::string& path);

/// Eigencurve SVG, curves colored by block membership.
void write_eigencurves_svg(const EigencurveData& data, const std::string& path);

/// Flat key=value manifest, one pair per line, in the given order.
void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path);

/// 17-significant-digit decimal rendering used by all emitters.
std::string format_double(double value);

}  // namespace fovflow
