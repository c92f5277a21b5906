#pragma once

#include <span>
#include <utility>
#include <vector>

#include "schur/dense.hpp"
#include "schur/errors.hpp"
#include "schur/permutation.hpp"

namespace schur {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// An empty (all-zero) rows x cols matrix.
  CsrMatrix(Index rows, Index cols);
  /// Validating constructor: throws ConsistencyError on unsorted or duplicate
  /// columns, DimensionError on out-of-range indices.
  CsrMatrix(Index rows, Index cols, std::vector<Index> row_ptr, std::vector<Index> col_idx,
            std::vector<double> values);

  /// Triplets are sorted; duplicates are rejected, not summed.
  static CsrMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(col_idx_.size()); }

  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  std::span<const Index> row_cols(Index r) const {
    return {col_idx_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }
  std::span<const double> row_values(Index r) const {
    return {values_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }
  Index row_nnz(Index r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

  /// Stored value at (r, c), or 0 if not stored.
  double at(Index r, Index c) const;

  CsrMatrix transposed() const;
  bool same_pattern(const CsrMatrix& o) const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

DenseMatrix csr_to_dense(const CsrMatrix& a);

/// result(r, p.new_of(c)) = a(r, c); nnz unchanged.
CsrMatrix permute_cols(const CsrMatrix& a, const Permutation& p);
/// result(p.new_of(r), c) = a(r, c).
CsrMatrix permute_rows(const CsrMatrix& a, const Permutation& p);
/// P A P^T for square A: result(i, j) = a(p.old_of(i), p.old_of(j)).
CsrMatrix permute_symmetric(const CsrMatrix& a, const Permutation& p);

/// Entries inside the half-open window [row0, row1) x [col0, col1), reindexed
/// to the window origin.
CsrMatrix extract_sub_csr(const CsrMatrix& a, Index row0, Index row1, Index col0, Index col1);

struct GatheredRows {
  CsrMatrix compact;
  std::vector<Index> row_map;  // compact row k came from row_map[k]
};
/// Drops structurally empty rows, keeping the others in order.
GatheredRows gather_nonempty_rows(const CsrMatrix& a);

/// y = A x
std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x);
/// y = A^T x
std::vector<double> spmv_transposed(const CsrMatrix& a, std::span<const double> x);

bool is_structurally_symmetric(const CsrMatrix& a);

}  // namespace schur
