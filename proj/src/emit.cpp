#include "fovflow/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_set>

namespace fovflow {

namespace {

constexpr int kCanvasW = 840;
constexpr int kCanvasH = 680;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 56;
constexpr std::size_t kMaxPathVertices = 4096;

const char* kPalette[] = {
    "#4363d8", "#e6194b", "#3cb44b", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#9a6324", "#008080", "#808000", "#000075", "#fabebe",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

struct Bounds {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
};

Bounds data_bounds(const std::vector<BoundaryPoint>& points) {
  Bounds b;
  b.re_min = b.re_max = points.front().re;
  b.im_min = b.im_max = points.front().im;
  for (const auto& p : points) {
    b.re_min = std::min(b.re_min, p.re);
    b.re_max = std::max(b.re_max, p.re);
    b.im_min = std::min(b.im_min, p.im);
    b.im_max = std::max(b.im_max, p.im);
  }
  return b;
}

// 1-2-5 ladder producing 4..9 ticks across [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  for (double factor : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * factor) <= 9.0) {
      step *= factor;
      break;
    }
  }
  std::vector<double> ticks;
  double tick = std::ceil(lo / step) * step;
  for (; tick <= hi + 0.5 * step; tick += step) {
    if (std::abs(tick) < 1e-12 * span) tick = 0.0;
    ticks.push_back(tick);
  }
  return ticks;
}

// Keeps at most kMaxPathVertices indices, always retaining the coordinate
// extremes so bounding boxes survive the decimation.
std::vector<std::size_t> decimate(const std::vector<std::size_t>& indices,
                                  const std::vector<BoundaryPoint>& points) {
  if (indices.size() <= kMaxPathVertices) return indices;
  std::size_t e_re_min = indices[0], e_re_max = indices[0];
  std::size_t e_im_min = indices[0], e_im_max = indices[0];
  for (std::size_t idx : indices) {
    if (points[idx].re < points[e_re_min].re) e_re_min = idx;
    if (points[idx].re > points[e_re_max].re) e_re_max = idx;
    if (points[idx].im < points[e_im_min].im) e_im_min = idx;
    if (points[idx].im > points[e_im_max].im) e_im_max = idx;
  }
  const std::unordered_set<std::size_t> keep{e_re_min, e_re_max, e_im_min,
                                             e_im_max};
  const std::size_t stride =
      (indices.size() + kMaxPathVertices - 1) / kMaxPathVertices;
  std::vector<std::size_t> out;
  out.reserve(kMaxPathVertices + 8);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i % stride == 0 || keep.count(indices[i])) out.push_back(indices[i]);
  }
  if (out.back() != indices.back()) out.push_back(indices.back());
  return out;
}

void svg_axes(std::ofstream& out, const Bounds& view, double scale, double tx,
              double ty) {
  const int x0 = kMarginLeft, x1 = kCanvasW - kMarginRight;
  const int y0 = kMarginTop, y1 = kCanvasH - kMarginBottom;
  out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << (x1 - x0)
      << "\" height=\"" << (y1 - y0)
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  for (double tick : nice_ticks(view.re_min, view.re_max)) {
    const double px = tx + scale * tick;
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    out << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << y1 << "\" x2=\""
        << fmt("%.2f", px) << "\" y2=\"" << (y1 + 6)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt("%.2f", px) << "\" y=\"" << (y1 + 22)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\" "
           "text-anchor=\"middle\">"
        << fmt("%.6g", tick) << "</text>\n";
  }
  for (double tick : nice_ticks(view.im_min, view.im_max)) {
    const double py = ty - scale * tick;
    if (py < y0 - 0.5 || py > y1 + 0.5) continue;
    out << "<line x1=\"" << (x0 - 6) << "\" y1=\"" << fmt("%.2f", py)
        << "\" x2=\"" << x0 << "\" y2=\"" << fmt("%.2f", py)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << (x0 - 10) << "\" y=\"" << fmt("%.2f", py + 4)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\" "
           "text-anchor=\"end\">"
        << fmt("%.6g", tick) << "</text>\n";
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_boundary_csv(const FovResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  const std::set<std::size_t> on_hull(result.hull.begin(), result.hull.end());
  out << "block_id,t,re,im,on_hull\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    out << p.block_id << ",";
    if (p.angle) out << format_double(*p.angle);
    out << "," << format_double(p.re) << "," << format_double(p.im) << ","
        << (on_hull.count(i) ? 1 : 0) << "\n";
  }
  if (!out) throw InputError(path + ": write failed");

  std::ofstream hull_out(path + ".hull.csv");
  if (!hull_out) throw InputError(path + ".hull.csv: cannot open for writing");
  hull_out << "block_id,t,re,im\n";
  for (std::size_t idx : result.hull) {
    const auto& p = result.points[idx];
    hull_out << p.block_id << ",";
    if (p.angle) hull_out << format_double(*p.angle);
    hull_out << "," << format_double(p.re) << "," << format_double(p.im)
             << "\n";
  }
  if (!hull_out) throw InputError(path + ".hull.csv: write failed");
}

void write_fov_svg(const FovResult& result, const std::string& path,
                   const SvgOptions& options) {
  if (result.points.empty() || result.hull.empty())
    throw InputError("write_fov_svg: empty result");
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");

  Bounds b = data_bounds(result.points);
  const double span_re = std::max(b.re_max - b.re_min, 1e-9);
  const double span_im = std::max(b.im_max - b.im_min, 1e-9);
  b.re_min -= 0.06 * span_re;
  b.re_max += 0.06 * span_re;
  b.im_min -= 0.06 * span_im;
  b.im_max += 0.06 * span_im;

  const double plot_w = kCanvasW - kMarginLeft - kMarginRight;
  const double plot_h = kCanvasH - kMarginTop - kMarginBottom;
  const double scale = std::min(plot_w / (b.re_max - b.re_min),
                                plot_h / (b.im_max - b.im_min));
  const double tx = kMarginLeft + 0.5 * plot_w -
                    scale * 0.5 * (b.re_min + b.re_max);
  const double ty = kMarginTop + 0.5 * plot_h +
                    scale * 0.5 * (b.im_min + b.im_max);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasW
      << "\" height=\"" << kCanvasH << "\" viewBox=\"0 0 " << kCanvasW << " "
      << kCanvasH << "\">\n";
  out << "<rect width=\"" << kCanvasW << "\" height=\"" << kCanvasH
      << "\" fill=\"#ffffff\"/>\n";
  out << "<g transform=\"translate(" << fmt("%.6f", tx) << " "
      << fmt("%.6f", ty) << ") scale(" << fmt("%.9f", scale) << " "
      << fmt("%.9f", -scale) << ")\">\n";

  // Per-block curve polylines (points that carry an angle).
  std::vector<std::vector<std::size_t>> per_block(result.blocks.size());
  std::vector<std::vector<std::size_t>> eigen_markers(result.blocks.size());
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    const auto id = static_cast<std::size_t>(p.block_id);
    if (p.angle)
      per_block[id].push_back(i);
    else
      eigen_markers[id].push_back(i);
  }
  for (std::size_t blk = 0; blk < per_block.size(); ++blk) {
    if (per_block[blk].empty()) continue;
    const char* color =
        options.show_blocks ? kPalette[blk % kPaletteSize] : kPalette[0];
    out << "<polyline class=\"block block-" << blk
        << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" "
           "points=\"";
    for (std::size_t idx : decimate(per_block[blk], result.points)) {
      out << fmt("%.12g", result.points[idx].re) << ","
          << fmt("%.12g", result.points[idx].im) << " ";
    }
    out << "\"/>\n";
  }

  // Global hull as a closed path.
  out << "<path class=\"hull\" fill=\"none\" stroke=\"#000000\" "
         "stroke-width=\"1.6\" vector-effect=\"non-scaling-stroke\" d=\"";
  const auto hull_vertices = decimate(result.hull, result.points);
  for (std::size_t i = 0; i < hull_vertices.size(); ++i) {
    const auto& p = result.points[hull_vertices[i]];
    out << (i == 0 ? "M" : "L") << fmt("%.12g", p.re) << " "
        << fmt("%.12g", p.im) << " ";
  }
  out << "Z\"/>\n";
  out << "</g>\n";

  // Eigenvalue markers of normal blocks, drawn in pixel space.
  for (std::size_t blk = 0; blk < eigen_markers.size(); ++blk) {
    const char* color =
        options.show_blocks ? kPalette[blk % kPaletteSize] : kPalette[0];
    for (std::size_t idx : eigen_markers[blk]) {
      const auto& p = result.points[idx];
      out << "<circle class=\"eig block-" << blk << "\" cx=\""
          << fmt("%.3f", tx + scale * p.re) << "\" cy=\""
          << fmt("%.3f", ty - scale * p.im) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
  }

  svg_axes(out, b, scale, tx, ty);
  out << "</svg>\n";
  if (!out) throw InputError(path + ": write failed");
}

void write_eigencurves_csv(const EigencurveData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  Index total = 0;
  for (Index size : data.block_sizes) total += size;
  out << "t";
  for (Index c = 1; c <= total; ++c) out << ",lambda_" << c;
  out << "\n";
  std::vector<double> row(static_cast<std::size_t>(total));
  for (Index i = 0; i < data.angles.size(); ++i) {
    std::size_t c = 0;
    for (const auto& curve : data.curves)
      for (Index j = 0; j < curve.cols(); ++j) row[c++] = curve(i, j);
    std::sort(row.begin(), row.end());
    out << format_double(data.angles(i));
    for (double value : row) out << "," << format_double(value);
    out << "\n";
  }
  if (!out) throw InputError(path + ": write failed");
}

void write_eigencurves_svg(const EigencurveData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& curve : data.curves) {
    if (curve.size() == 0) continue;
    const double cmin = curve.minCoeff();
    const double cmax = curve.maxCoeff();
    lo = first ? cmin : std::min(lo, cmin);
    hi = first ? cmax : std::max(hi, cmax);
    first = false;
  }
  if (first) throw InputError("write_eigencurves_svg: no curves");
  const double pad = 0.05 * std::max(hi - lo, 1e-12);
  lo -= pad;
  hi += pad;
  const double t_max = data.angles.size() > 0
                           ? data.angles(data.angles.size() - 1)
                           : 1.0;

  const double plot_w = kCanvasW - kMarginLeft - kMarginRight;
  const double plot_h = kCanvasH - kMarginTop - kMarginBottom;
  const double sx = plot_w / std::max(t_max, 1e-12);
  const double sy = plot_h / (hi - lo);
  const auto px = [&](double t) { return kMarginLeft + sx * t; };
  const auto py = [&](double v) {
    return kCanvasH - kMarginBottom - sy * (v - lo);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasW
      << "\" height=\"" << kCanvasH << "\" viewBox=\"0 0 " << kCanvasW << " "
      << kCanvasH << "\">\n";
  out << "<rect width=\"" << kCanvasW << "\" height=\"" << kCanvasH
      << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t blk = 0; blk < data.curves.size(); ++blk) {
    const auto& curve = data.curves[blk];
    for (Index j = 0; j < curve.cols(); ++j) {
      out << "<polyline class=\"curve block-" << blk
          << "\" fill=\"none\" stroke=\"" << kPalette[blk % kPaletteSize]
          << "\" stroke-width=\"1.2\" points=\"";
      for (Index i = 0; i < data.angles.size(); ++i) {
        out << fmt("%.3f", px(data.angles(i))) << ","
            << fmt("%.3f", py(curve(i, j))) << " ";
      }
      out << "\"/>\n";
    }
  }
  const int x0 = kMarginLeft, x1 = kCanvasW - kMarginRight;
  const int y0 = kMarginTop, y1 = kCanvasH - kMarginBottom;
  out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << (x1 - x0)
      << "\" height=\"" << (y1 - y0)
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  for (double tick : nice_ticks(0.0, t_max)) {
    out << "<line x1=\"" << fmt("%.2f", px(tick)) << "\" y1=\"" << y1
        << "\" x2=\"" << fmt("%.2f", px(tick)) << "\" y2=\"" << (y1 + 6)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt("%.2f", px(tick)) << "\" y=\"" << (y1 + 22)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\" "
           "text-anchor=\"middle\">"
        << fmt("%.6g", tick) << "</text>\n";
  }
  for (double tick : nice_ticks(lo, hi)) {
    out << "<line x1=\"" << (x0 - 6) << "\" y1=\"" << fmt("%.2f", py(tick))
        << "\" x2=\"" << x0 << "\" y2=\"" << fmt("%.2f", py(tick))
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << (x0 - 10) << "\" y=\"" << fmt("%.2f", py(tick) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\" "
           "text-anchor=\"end\">"
        << fmt("%.6g", tick) << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw InputError(path + ": write failed");
}

void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  for (const auto& [key, value] : entries) out << key << "=" << value << "\n";
  if (!out) throw InputError(path + ": write failed");
}

}  // namespace fovflow
