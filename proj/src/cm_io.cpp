#include "gielab/cm_io.hpp"

#include "gielab/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gielab {

CovarianceMatrix read_cm(std::istream& in) {
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream head(line);
    if (!(head >> n) || n < 1) throw Error(ErrorCode::Parse, "CM file: first line must be a positive mode count");
    std::string extra;
    if (head >> extra) throw Error(ErrorCode::Parse, "CM file: unexpected text after mode count");
    break;
  }
  if (n < 1) throw Error(ErrorCode::Parse, "CM file: empty input");

  Mat m(2 * n, 2 * n);
  int row = 0;
  while (row < 2 * n && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    for (int c = 0; c < 2 * n; ++c) {
      if (!(ls >> m(row, c))) throw Error(ErrorCode::Parse, fmt::format("CM file: row {} has fewer than {} entries", row + 1, 2 * n));
    }
    std::string extra;
    if (ls >> extra) throw Error(ErrorCode::Parse, fmt::format("CM file: row {} has more than {} entries", row + 1, 2 * n));
    ++row;
  }
  if (row < 2 * n) throw Error(ErrorCode::Parse, fmt::format("CM file: expected {} rows, got {}", 2 * n, row));
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw Error(ErrorCode::Parse, "CM file: trailing data");
  }
  // CovarianceMatrix rejects asymmetry beyond 1e-8 (relative to the largest entry).
  return CovarianceMatrix(m);
}

CovarianceMatrix read_cm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, fmt::format("cannot open '{}'", path));
  return read_cm(in);
}

void write_cm(std::ostream& out, const CovarianceMatrix& gamma) {
  const Mat& m = gamma.matrix();
  out << gamma.n_modes() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt::format("{:.17g}", m(i, j));
    out << '\n';
  }
}

}  // namespace gielab
