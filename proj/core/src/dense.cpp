#include "schur/dense.hpp"

#include <algorithm>
#include <cmath>

namespace schur {

DenseMatrix::DenseMatrix(Index rows, Index cols) : DenseMatrix(rows, cols, cols) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, Index ld)
    : rows_(rows), cols_(cols), ld_(ld) {
  if (rows < 0 || cols < 0 || ld < cols) throw DimensionError("invalid dense shape");
  values_.assign(static_cast<std::size_t>(rows * ld), 0.0);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<Index>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  ld_ = cols_;
  values_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<Index>(r.size()) != cols_) throw DimensionError("ragged initializer");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

void DenseMatrix::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

DenseMatrix copy_of(ConstDenseView v) {
  DenseMatrix out(v.rows(), v.cols());
  for (Index r = 0; r < v.rows(); ++r)
    std::copy_n(v.row(r), v.cols(), out.data() + r * out.ld());
  return out;
}

double frobenius_norm(ConstDenseView a) {
  double s = 0.0;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) s += a(r, c) * a(r, c);
  return std::sqrt(s);
}

double max_abs(ConstDenseView a) {
  double m = 0.0;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

double relative_frobenius_error(ConstDenseView a, ConstDenseView b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("relative_frobenius_error: shape mismatch");
  double diff = 0.0;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) {
      const double d = a(r, c) - b(r, c);
      diff += d * d;
    }
  const double ref = frobenius_norm(b);
  return ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff);
}

void scatter_add_rows(ConstDenseView src, std::span<const Index> row_map, DenseView dst) {
  if (static_cast<Index>(row_map.size()) != src.rows())
    throw DimensionError("scatter_add_rows: row_map length differs from source rows");
  if (!row_map.empty() && src.cols() != dst.cols())
    throw DimensionError("scatter_add_rows: column count mismatch");
  for (Index k = 0; k < src.rows(); ++k) {
    const Index r = row_map[k];
    if (r < 0 || r >= dst.rows()) throw DimensionError("scatter_add_rows: row index out of range");
    const double* s = src.row(k);
    double* d = dst.row(r);
    for (Index c = 0; c < src.cols(); ++c) d[c] += s[c];
  }
}

}  // namespace schur
