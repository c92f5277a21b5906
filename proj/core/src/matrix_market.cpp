#include "schur/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace schur::mm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Header {
  std::string format;  // coordinate | array
  std::string field;   // real | integer | pattern
  std::string symmetry;
};

Header read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("matrix market: empty stream");
  std::istringstream hs(line);
  std::string banner, object;
  Header h;
  hs >> banner >> object >> h.format >> h.field >> h.symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    throw IoError("matrix market: missing %%MatrixMarket matrix banner");
  h.format = lower(h.format);
  h.field = lower(h.field);
  h.symmetry = lower(h.symmetry);
  if (h.field == "complex") throw IoError("matrix market: complex matrices are not supported");
  if (h.symmetry != "general" && h.symmetry != "symmetric")
    throw IoError("matrix market: unsupported symmetry '" + h.symmetry + "'");
  return h;
}

// Next non-comment, non-blank line.
std::string data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return line;
  }
  throw IoError("matrix market: unexpected end of data");
}

}  // namespace

CsrMatrix read_csr(std::istream& in) {
  const Header h = read_header(in);
  if (h.format != "coordinate") throw IoError("matrix market: expected coordinate format");
  Index rows = 0, cols = 0, entries = 0;
  {
    std::istringstream ss(data_line(in));
    if (!(ss >> rows >> cols >> entries)) throw IoError("matrix market: bad size line");
  }
  const bool symmetric = h.symmetry == "symmetric";
  const bool pattern = h.field == "pattern";
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(symmetric ? 2 * entries : entries));
  for (Index k = 0; k < entries; ++k) {
    std::istringstream ss(data_line(in));
    Index r = 0, c = 0;
    double v = 1.0;
    if (!(ss >> r >> c)) throw IoError("matrix market: bad entry line");
    if (!pattern && !(ss >> v)) throw IoError("matrix market: missing value");
    t.push_back({r - 1, c - 1, v});
    if (symmetric && r != c) t.push_back({c - 1, r - 1, v});
  }
  return CsrMatrix::from_triplets(rows, cols, std::move(t));
}

CsrMatrix read_csr(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  try {
    return read_csr(f);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_csr(std::ostream& out, const CsrMatrix& a, Symmetry sym) {
  const bool symmetric = sym == Symmetry::Symmetric;
  if (symmetric && a.rows() != a.cols()) throw DimensionError("symmetric output needs a square matrix");
  Index count = 0;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c : a.row_cols(r))
      if (!symmetric || c <= r) ++count;
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
  out << a.rows() << ' ' << a.cols() << ' ' << count << '\n';
  out << std::setprecision(17);
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (!symmetric || cols[k] <= r) out << r + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
  }
}

void write_csr(const std::filesystem::path& path, const CsrMatrix& a, Symmetry sym) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_csr(f, a, sym);
  if (!f) throw IoError("write failed: " + path.string());
}

void write_dense(std::ostream& out, ConstDenseView a) {
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  out << std::setprecision(17);
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r) out << a(r, c) << '\n';
}

void write_dense(const std::filesystem::path& path, ConstDenseView a) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_dense(f, a);
  if (!f) throw IoError("write failed: " + path.string());
}

DenseMatrix read_dense(std::istream& in) {
  const Header h = read_header(in);
  if (h.format != "array") throw IoError("matrix market: expected array format");
  Index rows = 0, cols = 0;
  {
    std::istringstream ss(data_line(in));
    if (!(ss >> rows >> cols)) throw IoError("matrix market: bad size line");
  }
  DenseMatrix d(rows, cols);
  const bool symmetric = h.symmetry == "symmetric";
  for (Index c = 0; c < cols; ++c)
    for (Index r = symmetric ? c : 0; r < rows; ++r) {
      std::istringstream ss(data_line(in));
      double v = 0.0;
      if (!(ss >> v)) throw IoError("matrix market: bad value");
      d(r, c) = v;
      if (symmetric) d(c, r) = v;
    }
  return d;
}

}  // namespace schur::mm
