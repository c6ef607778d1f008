#include "xtrace/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace xtrace {

namespace {

[[noreturn]] void fail(const std::string& path, long line,
                       const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

Eigen::MatrixXd read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string header;
  long lineno = 1;
  if (!std::getline(in, header)) fail(path, lineno, "empty file");
  strip_cr(header);

  std::istringstream hs(header);
  std::string banner, object, format, field, storage;
  hs >> banner >> object >> format >> field >> storage;
  if (banner != "%%MatrixMarket") fail(path, lineno, "missing banner");
  if (lower(object) != "matrix" || lower(format) != "coordinate") {
    fail(path, lineno, "only coordinate matrices are supported");
  }
  field = lower(field);
  storage = lower(storage);
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") {
    fail(path, lineno, "unsupported field type '" + field + "'");
  }
  const bool symmetric = storage == "symmetric";
  if (!symmetric && storage != "general") {
    fail(path, lineno, "unsupported storage '" + storage + "'");
  }

  std::string line;
  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> nnz)) fail(path, lineno, "bad size line");
    break;
  }
  if (rows < 0) fail(path, lineno, "missing size line");
  if (rows != cols) fail(path, lineno, "square matrices only");
  if (rows < 1) fail(path, lineno, "empty matrix");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    long i = 0, j = 0;
    double v = 1.0;
    if (!(ls >> i >> j)) fail(path, lineno, "bad entry");
    if (!pattern && !(ls >> v)) fail(path, lineno, "missing value");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      fail(path, lineno, "index out of range");
    }
    if (pattern) v = 1.0;
    m(i - 1, j - 1) = v;
    if (symmetric) m(j - 1, i - 1) = v;
    ++seen;
  }
  if (seen != nnz) {
    throw IoError(path + ": entry count " + std::to_string(seen) +
                  " does not match header " + std::to_string(nnz));
  }
  return m;
}

}  // namespace xtrace
