#include "fovflow/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fovflow {

namespace {

[[noreturn]] void fail(const std::string& path, long line,
                       const std::string& message) {
  throw InputError(path + ":" + std::to_string(line) + ": " + message);
}

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return text;
}

struct LineReader {
  std::istream& in;
  const std::string& path;
  long line_number = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }
};

Matrix read_matrix_market(std::istream& in, const std::string& path,
                          const std::string& header, long header_line) {
  std::istringstream banner(lowercase(header));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "array")
    fail(path, header_line, "expected 'matrix array' Matrix Market header");
  if (field != "complex" && field != "real")
    fail(path, header_line, "unsupported field '" + field + "' (complex or real)");
  if (symmetry != "general")
    fail(path, header_line, "unsupported symmetry '" + symmetry + "' (general)");
  const bool complex_field = field == "complex";

  LineReader reader{in, path, header_line};
  std::string line;
  // Size line, after optional comments.
  Index rows = 0, cols = 0;
  for (;;) {
    if (!reader.next(line)) fail(path, reader.line_number, "missing size line");
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols))
      fail(path, reader.line_number, "malformed size line '" + line + "'");
    break;
  }
  if (rows != cols)
    fail(path, reader.line_number,
         "non-square matrix " + std::to_string(rows) + "x" + std::to_string(cols));
  if (rows < 1) fail(path, reader.line_number, "dimension must be positive");

  Matrix A(rows, cols);
  // Array format stores entries column-major.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      do {
        if (!reader.next(line))
          fail(path, reader.line_number + 1,
               "unexpected end of file: expected " +
                   std::to_string(rows * cols) + " entries");
      } while (line.empty() || line[0] == '%');
      std::istringstream entry(line);
      double re = 0.0, im = 0.0;
      if (complex_field) {
        if (!(entry >> re >> im))
          fail(path, reader.line_number, "malformed complex entry '" + line + "'");
      } else {
        if (!(entry >> re))
          fail(path, reader.line_number, "malformed real entry '" + line + "'");
      }
      std::string trailing;
      if (entry >> trailing)
        fail(path, reader.line_number, "trailing data '" + trailing + "'");
      A(i, j) = Complex(re, im);
    }
  }
  while (reader.next(line)) {
    if (!line.empty() && line[0] != '%') {
      std::istringstream rest(line);
      std::string token;
      if (rest >> token)
        fail(path, reader.line_number, "entry count mismatch: extra data");
    }
  }
  return A;
}

Matrix read_matrix_csv(std::istream& in, const std::string& path,
                       const std::string& header, long header_line) {
  if (header.rfind("n=", 0) != 0)
    fail(path, header_line, "expected 'n=<dim>' header");
  Index n = 0;
  try {
    n = static_cast<Index>(std::stoll(header.substr(2)));
  } catch (const std::exception&) {
    fail(path, header_line, "malformed dimension '" + header + "'");
  }
  if (n < 1) fail(path, header_line, "dimension must be positive");

  Matrix A(n, n);
  LineReader reader{in, path, header_line};
  std::string line;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!reader.next(line))
        fail(path, reader.line_number + 1,
             "unexpected end of file: expected " + std::to_string(n * n) +
                 " entries");
      std::istringstream entry(line);
      double re = 0.0, im = 0.0;
      char comma = 0;
      if (!(entry >> re >> comma >> im) || comma != ',')
        fail(path, reader.line_number, "malformed 're,im' row '" + line + "'");
      A(i, j) = Complex(re, im);
    }
  }
  while (reader.next(line)) {
    if (!line.empty())
      fail(path, reader.line_number, "entry count mismatch: extra data");
  }
  return A;
}

}  // namespace

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open for reading");
  LineReader reader{in, path};
  std::string header;
  if (!reader.next(header)) fail(path, 1, "empty file");
  if (lowercase(header).rfind("%%matrixmarket", 0) == 0)
    return read_matrix_market(in, path, header, reader.line_number);
  if (header.rfind("n=", 0) == 0)
    return read_matrix_csv(in, path, header, reader.line_number);
  fail(path, 1, "unrecognized header: expected %%MatrixMarket or n=<dim>");
}

void write_matrix_market(const Eigen::Ref<const Matrix>& A,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << "%%MatrixMarket matrix array complex general\n";
  out << A.rows() << " " << A.cols() << "\n";
  char buffer[96];
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      std::snprintf(buffer, sizeof(buffer), "%.17g %.17g\n", A(i, j).real(),
                    A(i, j).imag());
      out << buffer;
    }
  }
  if (!out) throw InputError(path + ": write failed");
}

void write_matrix_csv(const Eigen::Ref<const Matrix>& A,
                      const std::string& path) {
  if (A.rows() != A.cols())
    throw InputError("write_matrix_csv: matrix must be square");
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << "n=" << A.rows() << "\n";
  char buffer[96];
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g\n", A(i, j).real(),
                    A(i, j).imag());
      out << buffer;
    }
  }
  if (!out) throw InputError(path + ": write failed");
}

void write_matrix(const Eigen::Ref<const Matrix>& A, const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    write_matrix_csv(A, path);
  else
    write_matrix_market(A, path);
}

}  // namespace fovflow
