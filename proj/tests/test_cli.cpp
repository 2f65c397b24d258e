#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef FOVFLOW_CLI_PATH
#error "FOVFLOW_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "fovflow_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string command =
      std::string(FOVFLOW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("cli gallery, decompose, and fov round trip") {
  const auto dir = work_dir();
  const auto matrix = (dir / "demo.mtx").string();
  CHECK(run("gallery block-random --blocks 4,3 --seed 40 --out " + matrix) == 0);
  CHECK(fs::exists(matrix));
  CHECK(fs::exists(matrix + ".manifest.txt"));

  CHECK(run("decompose " + matrix + " --out " + (dir / "dec.txt").string()) == 0);
  const std::string report = slurp(dir / "dec.txt");
  CHECK(report.find("block_sizes=3,4") != std::string::npos);
  CHECK(report.find("decomposable=1") != std::string::npos);

  const auto csv = (dir / "fov.csv").string();
  const auto svg = (dir / "fov.svg").string();
  CHECK(run("fov " + matrix + " --tau 0.002 --out " + csv + " --svg " + svg) == 0);
  CHECK(fs::exists(csv));
  CHECK(fs::exists(csv + ".hull.csv"));
  CHECK(fs::exists(csv + ".manifest.txt"));
  CHECK(fs::exists(svg));
}

TEST_CASE("cli outputs are byte-identical across reruns") {
  const auto dir = work_dir();
  const auto csv_a = (dir / "a.csv").string();
  const auto csv_b = (dir / "b.csv").string();
  const std::string spec = "fov --gallery block-random --blocks 3,2 --seed 9 "
                           "--tau 0.002 --out ";
  CHECK(run(spec + csv_a) == 0);
  CHECK(run(spec + csv_b) == 0);
  CHECK(slurp(csv_a) == slurp(csv_b));
  CHECK(slurp(csv_a + ".hull.csv") == slurp(csv_b + ".hull.csv"));

  const auto svg_a = (dir / "a.svg").string();
  const auto svg_b = (dir / "b.svg").string();
  CHECK(run(spec + csv_a + " --svg " + svg_a) == 0);
  CHECK(run(spec + csv_b + " --svg " + svg_b) == 0);
  CHECK(slurp(svg_a) == slurp(svg_b));
}

TEST_CASE("cli eigencurves and bounds") {
  const auto dir = work_dir();
  const auto csv = (dir / "curves.csv").string();
  CHECK(run("eigencurves --gallery block-random --blocks 3,2 --seed 12 "
            "--grid 64 --out " + csv) == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,lambda_1,lambda_2,lambda_3,lambda_4,lambda_5");

  CHECK(run("bounds --alpha 0.5") == 0);
}

TEST_CASE("cli bench runs both pipelines") {
  const auto dir = work_dir();
  const auto report_path = (dir / "bench.txt").string();
  CHECK(run("bench --gallery block-random --blocks 3,2 --seed 9 --tau 0.002 "
            "--grid 256 --out " + report_path) == 0);
  const std::string report = slurp(report_path);
  CHECK(report.find("speedup=") != std::string::npos);
  CHECK(report.find("hausdorff=") != std::string::npos);
}

TEST_CASE("cli error paths use the documented exit codes") {
  CHECK(run("fov /nonexistent/matrix.mtx") == 2);
  CHECK(run("fov") == 2);  // no input at all
  CHECK(run("bounds --alpha 2.0") == 2);
  CHECK(run("gallery nosuchfamily --n 4 --out /tmp/x.mtx") == 2);
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("--help") == 0);

  // The 4_1 look-ahead family has no convergent member: numerical failure.
  CHECK(run("fov --gallery jordan --n 3 --ks 4,1") == 3);

  const auto dir = work_dir();
  const auto broken = dir / "broken.mtx";
  std::ofstream(broken) << "%%MatrixMarket matrix array complex general\n2 2\n1 0\n";
  CHECK(run("fov " + broken.string()) == 2);
}
