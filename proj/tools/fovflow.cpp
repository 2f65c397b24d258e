// Command-line front end: FoV assembly, decomposition reports, eigencurve
// export, benchmarks, test-matrix generators, and the block-size savings
// utility.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "fovflow/bench.hpp"
#include "fovflow/emit.hpp"
#include "fovflow/fov.hpp"
#include "fovflow/gallery.hpp"
#include "fovflow/matrix_io.hpp"

namespace {

using namespace fovflow;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  bool grid_explicit = false;
  std::string input;
  std::string gallery_family;
  std::vector<Index> blocks;
  std::vector<double> eigenvalue{0.0, 0.0};
  double alpha = -1.0;
  bool bare = false;
  Index n = 0;
  std::uint64_t seed = 1;

  double tau = 2e-4;
  double eta = 100.0;
  std::vector<int> ks{4, 5};
  double tol_pattern = 1e-10;
  double tol_verify = 1e-8;
  double t_a = 0.31;
  double t_b = 1.83;
  Index grid = 2048;
  int parallel = 1;
  std::string out;
  std::string svg;
};

void add_source_flags(CLI::App& cmd, CommonOptions& opt) {
  cmd.add_option("input", opt.input,
                 "matrix file (Matrix Market array or n=<dim> CSV)");
  cmd.add_option("--gallery", opt.gallery_family,
                 "generate the input instead: block-random, jordan, "
                 "clement-like, hanowa-like, paper-52");
  cmd.add_option("--blocks", opt.blocks, "block sizes for block-random")
      ->delimiter(',');
  cmd.add_option("--eigenvalue", opt.eigenvalue,
                 "jordan eigenvalue as re,im")
      ->delimiter(',')
      ->expected(2);
  cmd.add_option("--alpha", opt.alpha, "hanowa-like diagonal shift");
  cmd.add_flag("--bare", opt.bare, "skip the hiding unitary similarity");
  cmd.add_option("--n", opt.n, "dimension for the generated matrix");
  cmd.add_option("--seed", opt.seed, "generator seed");
}

void add_znn_flags(CLI::App& cmd, CommonOptions& opt) {
  cmd.add_option("--tau", opt.tau, "path sampling gap (default 0.0002)");
  cmd.add_option("--eta", opt.eta, "error decay constant (default 100)");
  cmd.add_option("--ks", opt.ks, "look-ahead formula type as k,s")
      ->delimiter(',')
      ->expected(2);
  cmd.add_option("--parallel", opt.parallel, "block worker count (default 1)");
}

void add_decompose_flags(CLI::App& cmd, CommonOptions& opt) {
  cmd.add_option("--tol-pattern", opt.tol_pattern,
                 "relative zero-pattern threshold (default 1e-10)");
  cmd.add_option("--tol-verify", opt.tol_verify,
                 "relative residual accepted as block-diagonal (default 1e-8)");
  cmd.add_option("--ta", opt.t_a, "first flow sample angle (default 0.31)");
  cmd.add_option("--tb", opt.t_b, "second flow sample angle (default 1.83)");
}

GallerySpec gallery_spec(const CommonOptions& opt, const std::string& family) {
  GallerySpec spec;
  spec.family = parse_gallery_family(family);
  spec.n = opt.n;
  spec.seed = opt.seed;
  spec.block_sizes = opt.blocks;
  spec.eigenvalue = Complex(opt.eigenvalue[0], opt.eigenvalue[1]);
  spec.alpha = opt.alpha;
  spec.bare = opt.bare;
  return spec;
}

std::pair<Matrix, std::string> resolve_matrix(const CommonOptions& opt) {
  if (!opt.input.empty() && !opt.gallery_family.empty())
    throw InputError("give either an input file or --gallery, not both");
  if (!opt.input.empty()) return {read_matrix(opt.input), opt.input};
  if (!opt.gallery_family.empty()) {
    const GallerySpec spec = gallery_spec(opt, opt.gallery_family);
    std::string desc = "gallery:" + opt.gallery_family;
    if (!spec.block_sizes.empty()) {
      desc += ":blocks=";
      for (std::size_t i = 0; i < spec.block_sizes.size(); ++i)
        desc += (i ? "+" : "") + std::to_string(spec.block_sizes[i]);
    } else if (spec.n != 0) {
      desc += ":n=" + std::to_string(spec.n);
    }
    desc += ":seed=" + std::to_string(spec.seed);
    return {gallery(spec), desc};
  }
  throw InputError("no input: give a matrix file or --gallery");
}

ZnnConfig znn_config(const CommonOptions& opt) {
  ZnnConfig cfg;
  cfg.tau = opt.tau;
  cfg.eta = opt.eta;
  if (opt.ks[0] != 4 || opt.ks[1] != 5)
    cfg.formula = derive_lookahead_formula(opt.ks[0], opt.ks[1]);
  if (opt.grid_explicit) cfg.fallback_grid = opt.grid;
  return cfg;
}

DecomposeOptions decompose_options(const CommonOptions& opt) {
  DecomposeOptions dopt;
  dopt.t_a = opt.t_a;
  dopt.t_b = opt.t_b;
  dopt.tol_pattern = opt.tol_pattern;
  dopt.tol_verify = opt.tol_verify;
  return dopt;
}

std::string join_sizes(const std::vector<Index>& sizes) {
  std::string text;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    text += (i ? "," : "") + std::to_string(sizes[i]);
  return text;
}

const char* method_name(BlockMethod method) {
  switch (method) {
    case BlockMethod::normal_eigenvalues: return "normal-eigenvalues";
    case BlockMethod::znn_track: return "znn-track";
    case BlockMethod::grid_fallback: return "grid-fallback";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> common_manifest(
    const char* command, const CommonOptions& opt, const std::string& source) {
  return {
      {"command", command},
      {"input", source},
      {"seed", std::to_string(opt.seed)},
      {"tau", format_double(opt.tau)},
      {"eta", format_double(opt.eta)},
      {"k", std::to_string(opt.ks[0])},
      {"s", std::to_string(opt.ks[1])},
      {"tol_pattern", format_double(opt.tol_pattern)},
      {"tol_verify", format_double(opt.tol_verify)},
      {"t_a", format_double(opt.t_a)},
      {"t_b", format_double(opt.t_b)},
      {"grid", std::to_string(opt.grid)},
      {"parallel", std::to_string(opt.parallel)},
      {"out", opt.out},
      {"svg", opt.svg},
  };
}

int run_fov(const CommonOptions& opt) {
  auto [A, source] = resolve_matrix(opt);
  const ZnnConfig cfg = znn_config(opt);
  const FovResult result =
      assemble_fov(A, cfg, decompose_options(opt), opt.parallel);

  std::vector<Index> sizes;
  for (const auto& block : result.blocks) sizes.push_back(block.size);
  std::printf("n              %ld\n", static_cast<long>(A.rows()));
  std::printf("blocks         %s\n", join_sizes(sizes).c_str());
  std::printf("residual       %s\n",
              format_double(result.decomposition_residual).c_str());
  for (std::size_t j = 0; j < result.blocks.size(); ++j) {
    const auto& block = result.blocks[j];
    std::printf("block %-3zu      size %-4ld %-18s %8zu points  %.3f s\n", j,
                static_cast<long>(block.size), method_name(block.method),
                block.point_count, block.seconds);
  }
  std::printf("points         %zu\n", result.points.size());
  std::printf("hull vertices  %zu\n", result.hull.size());
  std::printf("radius         %s\n",
              format_double(result.numerical_radius).c_str());
  std::printf("crawford       %s\n",
              format_double(result.crawford_number).c_str());
  std::printf("time           %.3f s (decompose %.3f, blocks %.3f, hull %.3f)\n",
              result.timings.total_seconds, result.timings.decompose_seconds,
              result.timings.blocks_seconds, result.timings.hull_seconds);

  if (!opt.out.empty()) {
    write_boundary_csv(result, opt.out);
    auto manifest = common_manifest("fov", opt, source);
    manifest.emplace_back("block_sizes", join_sizes(sizes));
    manifest.emplace_back("points_total", std::to_string(result.points.size()));
    manifest.emplace_back("points_on_hull", std::to_string(result.hull.size()));
    manifest.emplace_back("numerical_radius",
                          format_double(result.numerical_radius));
    manifest.emplace_back("crawford_number",
                          format_double(result.crawford_number));
    manifest.emplace_back("residual",
                          format_double(result.decomposition_residual));
    manifest.emplace_back("time_decompose_s",
                          format_double(result.timings.decompose_seconds));
    manifest.emplace_back("time_blocks_s",
                          format_double(result.timings.blocks_seconds));
    manifest.emplace_back("time_hull_s",
                          format_double(result.timings.hull_seconds));
    manifest.emplace_back("time_total_s",
                          format_double(result.timings.total_seconds));
    write_manifest(manifest, opt.out + ".manifest.txt");
  }
  if (!opt.svg.empty()) write_fov_svg(result, opt.svg);
  return kExitOk;
}

int run_decompose(const CommonOptions& opt, const std::string& unitary_path) {
  auto [A, source] = resolve_matrix(opt);
  const Decomposition dec = decompose(A, decompose_options(opt));
  std::printf("n             %ld\n", static_cast<long>(A.rows()));
  std::printf("decomposable  %s\n", dec.decomposable() ? "yes" : "no");
  std::printf("block_sizes   %s\n", join_sizes(dec.block_sizes).c_str());
  std::printf("residual      %s\n", format_double(dec.residual).c_str());

  if (!opt.out.empty()) {
    auto manifest = common_manifest("decompose", opt, source);
    manifest.emplace_back("decomposable", dec.decomposable() ? "1" : "0");
    manifest.emplace_back("block_sizes", join_sizes(dec.block_sizes));
    manifest.emplace_back("residual", format_double(dec.residual));
    write_manifest(manifest, opt.out);
  }
  if (!unitary_path.empty()) write_matrix(dec.unitary, unitary_path);
  return kExitOk;
}

int run_eigencurves(const CommonOptions& opt) {
  auto [A, source] = resolve_matrix(opt);
  const EigencurveData data = eigencurves(A, opt.grid, decompose_options(opt));
  std::printf("n            %ld\n", static_cast<long>(A.rows()));
  std::printf("block_sizes  %s\n", join_sizes(data.block_sizes).c_str());
  std::printf("grid         %ld\n", static_cast<long>(opt.grid));
  if (!opt.out.empty()) {
    write_eigencurves_csv(data, opt.out);
    auto manifest = common_manifest("eigencurves", opt, source);
    manifest.emplace_back("block_sizes", join_sizes(data.block_sizes));
    write_manifest(manifest, opt.out + ".manifest.txt");
  }
  if (!opt.svg.empty()) write_eigencurves_svg(data, opt.svg);
  return kExitOk;
}

int run_bench(const CommonOptions& opt, int repeat) {
  auto [A, source] = resolve_matrix(opt);
  const BenchReport report = run_bench(A, znn_config(opt),
                                       decompose_options(opt), opt.grid,
                                       repeat, opt.parallel);
  std::printf("n                  %ld\n", static_cast<long>(report.n));
  std::printf("blocks             %s\n", join_sizes(report.block_sizes).c_str());
  std::printf("all blocks normal  %s\n", report.all_blocks_normal ? "yes" : "no");
  std::printf("pipeline           %.3f s  (%zu points, %zu hull)\n",
              report.znn_seconds, report.znn_points, report.znn_hull);
  std::printf("grid baseline      %.3f s  (%zu points, %zu hull, grid %ld)\n",
              report.baseline_seconds, report.baseline_points,
              report.baseline_hull, static_cast<long>(opt.grid));
  std::printf("speedup            %.2fx\n", report.speedup);
  std::printf("hull hausdorff     %s  (matrix norm %s)\n",
              format_double(report.hausdorff).c_str(),
              format_double(report.matrix_norm).c_str());
  if (!opt.out.empty()) {
    auto manifest = common_manifest("bench", opt, source);
    manifest.emplace_back("repeat", std::to_string(repeat));
    manifest.emplace_back("block_sizes", join_sizes(report.block_sizes));
    manifest.emplace_back("all_blocks_normal",
                          report.all_blocks_normal ? "1" : "0");
    manifest.emplace_back("pipeline_seconds",
                          format_double(report.znn_seconds));
    manifest.emplace_back("baseline_seconds",
                          format_double(report.baseline_seconds));
    manifest.emplace_back("speedup", format_double(report.speedup));
    manifest.emplace_back("hausdorff", format_double(report.hausdorff));
    manifest.emplace_back("matrix_norm", format_double(report.matrix_norm));
    manifest.emplace_back("pipeline_points", std::to_string(report.znn_points));
    manifest.emplace_back("baseline_points",
                          std::to_string(report.baseline_points));
    write_manifest(manifest, opt.out);
  }
  return kExitOk;
}

int run_gallery(const CommonOptions& opt, const std::string& family) {
  const GallerySpec spec = gallery_spec(opt, family);
  const Matrix A = gallery(spec);
  std::printf("family  %s\n", gallery_family_name(spec.family).c_str());
  std::printf("n       %ld\n", static_cast<long>(A.rows()));
  std::printf("seed    %llu\n",
              static_cast<unsigned long long>(spec.seed));
  if (opt.out.empty())
    throw InputError("gallery: --out <file> is required");
  write_matrix(A, opt.out);
  auto manifest = common_manifest("gallery", opt, "gallery:" + family);
  manifest.emplace_back("n", std::to_string(A.rows()));
  manifest.emplace_back("bare", spec.bare ? "1" : "0");
  write_manifest(manifest, opt.out + ".manifest.txt");
  return kExitOk;
}

int run_bounds(double alpha) {
  const auto [best, worst] = speedup_bounds(alpha);
  std::printf("alpha           %s\n", format_double(alpha).c_str());
  std::printf("best_fraction   %s\n", format_double(best).c_str());
  std::printf("worst_fraction  %s\n", format_double(worst).c_str());
  std::printf("savings         %.1f%% .. %.1f%% of the full O(n^3) effort\n",
              100.0 * (1.0 - worst), 100.0 * (1.0 - best));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field-of-values boundary curves via hermitean matrix flows"};
  app.require_subcommand(1);

  CommonOptions opt;
  int repeat = 1;
  double alpha = 0.5;
  std::string unitary_path;

  CLI::App* fov = app.add_subcommand(
      "fov", "compute the FoV boundary: decompose, track blocks, hull");
  add_source_flags(*fov, opt);
  add_znn_flags(*fov, opt);
  add_decompose_flags(*fov, opt);
  fov->add_option("--grid", opt.grid, "fallback grid for aborted tracks");
  fov->add_option("--out", opt.out, "boundary CSV path (+ .hull.csv sidecar)");
  fov->add_option("--svg", opt.svg, "SVG plot path");

  CLI::App* dec = app.add_subcommand(
      "decompose", "report the unitary block structure of a matrix");
  add_source_flags(*dec, opt);
  add_decompose_flags(*dec, opt);
  dec->add_option("--out", opt.out, "report path (key=value lines)");
  dec->add_option("--unitary", unitary_path, "write the block-diagonalizing unitary");

  CLI::App* curves = app.add_subcommand(
      "eigencurves", "export flow eigencurves grouped by block");
  add_source_flags(*curves, opt);
  add_decompose_flags(*curves, opt);
  curves->add_option("--grid", opt.grid, "angle count (default 720)");
  curves->add_option("--out", opt.out, "CSV path");
  curves->add_option("--svg", opt.svg, "SVG path");

  CLI::App* bench = app.add_subcommand(
      "bench", "path-following pipeline vs dense-grid baseline");
  add_source_flags(*bench, opt);
  add_znn_flags(*bench, opt);
  add_decompose_flags(*bench, opt);
  bench->add_option("--grid", opt.grid, "baseline angle count (default 2048)");
  bench->add_option("--repeat", repeat, "repeat count, medians reported");
  bench->add_option("--out", opt.out, "report path (key=value lines)");

  CLI::App* gal = app.add_subcommand("gallery", "write a test matrix");
  std::string family;
  gal->add_option("family", family,
                  "block-random | jordan | clement-like | hanowa-like | paper-52")
      ->required();
  add_source_flags(*gal, opt);
  gal->get_option("input")->group("");  // positional input is meaningless here
  gal->add_option("--out", opt.out, "matrix file path (.mtx or .csv)");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "theoretical block-wise cost fractions for alpha = m/n");
  bounds->add_option("--alpha", alpha, "largest block size over n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (fov->parsed()) {
      opt.grid_explicit = !fov->get_option("--grid")->empty();
      return run_fov(opt);
    }
    if (dec->parsed()) return run_decompose(opt, unitary_path);
    if (curves->parsed()) {
      if (curves->get_option("--grid")->empty()) opt.grid = 720;
      return run_eigencurves(opt);
    }
    if (bench->parsed()) return run_bench(opt, repeat);
    if (gal->parsed()) return run_gallery(opt, family);
    if (bounds->parsed()) return run_bounds(alpha);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitInput;
}
