#pragma once

#include <cassert>
#include <span>
#include <vector>

#include "schur/errors.hpp"

namespace schur {

/// Non-owning row-major window into dense storage: element (r, c) lives at
/// data[r * ld + c].  Sub-windows share storage with their parent.
template <typename T>
class BasicDenseView {
 public:
  BasicDenseView() = default;
  BasicDenseView(T* data, Index rows, Index cols, Index ld)
      : data_(data), rows_(rows), cols_(cols), ld_(ld) {
    assert(ld >= cols);
  }
  // A mutable view converts to a const one.
  operator BasicDenseView<const T>() const { return {data_, rows_, cols_, ld_}; }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index ld() const { return ld_; }
  T* data() const { return data_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(Index r, Index c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[r * ld_ + c];
  }
  T* row(Index r) const { return data_ + r * ld_; }

  /// Window of `nr` x `nc` starting at (r0, c0).
  BasicDenseView block(Index r0, Index c0, Index nr, Index nc) const {
    if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_)
      throw DimensionError("dense block out of range");
    // An empty window may point one past the end; it is never dereferenced.
    return {data_ + (nr > 0 && nc > 0 ? r0 * ld_ + c0 : 0), nr, nc, ld_};
  }

 private:
  T* data_ = nullptr;
  Index rows_ = 0;
  Index cols_ = 0;
  Index ld_ = 0;
};

using DenseView = BasicDenseView<double>;
using ConstDenseView = BasicDenseView<const double>;

/// Owning row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);
  DenseMatrix(Index rows, Index cols, Index ld);
  /// Row-major nested initializer, handy in tests.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index ld() const { return ld_; }

  double& operator()(Index r, Index c) { return values_[r * ld_ + c]; }
  double operator()(Index r, Index c) const { return values_[r * ld_ + c]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  DenseView view() { return {values_.data(), rows_, cols_, ld_}; }
  ConstDenseView view() const { return {values_.data(), rows_, cols_, ld_}; }

  void fill(double v);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  Index ld_ = 0;
  std::vector<double> values_;
};

DenseMatrix copy_of(ConstDenseView v);

/// Frobenius norm of a - b divided by the Frobenius norm of b (plain difference
/// norm when b is zero).
double relative_frobenius_error(ConstDenseView a, ConstDenseView b);
double frobenius_norm(ConstDenseView a);
double max_abs(ConstDenseView a);

/// dst[row_map[k], :] += src[k, :] for every k.
void scatter_add_rows(ConstDenseView src, std::span<const Index> row_map, DenseView dst);

}  // namespace schur
