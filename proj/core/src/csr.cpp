#include "schur/csr.hpp"

#include <algorithm>
#include <numeric>

namespace schur {

CsrMatrix::CsrMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), row_ptr_(static_cast<std::size_t>(rows + 1), 0) {
  if (rows < 0 || cols < 0) throw DimensionError("negative CSR shape");
}

CsrMatrix::CsrMatrix(Index rows, Index cols, std::vector<Index> row_ptr,
                     std::vector<Index> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative CSR shape");
  if (static_cast<Index>(row_ptr_.size()) != rows + 1)
    throw DimensionError("row_ptr must have rows + 1 entries");
  if (col_idx_.size() != values_.size())
    throw DimensionError("col_idx and values differ in length");
  if (row_ptr_.front() != 0 || row_ptr_.back() != nnz())
    throw ConsistencyError("row_ptr must start at 0 and end at nnz");
  for (Index r = 0; r < rows; ++r) {
    if (row_ptr_[r + 1] < row_ptr_[r]) throw ConsistencyError("row_ptr is decreasing");
    for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      if (col_idx_[p] < 0 || col_idx_[p] >= cols) throw DimensionError("column index out of range");
      if (p > row_ptr_[r] && col_idx_[p] <= col_idx_[p - 1])
        throw ConsistencyError("column indices within a row must be strictly increasing");
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw DimensionError("triplet index out of range");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Index> row_ptr(static_cast<std::size_t>(rows + 1), 0);
  std::vector<Index> col_idx;
  std::vector<double> values;
  col_idx.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    if (k > 0 && triplets[k].row == triplets[k - 1].row && triplets[k].col == triplets[k - 1].col)
      throw ConsistencyError("duplicate entry in triplet list");
    ++row_ptr[triplets[k].row + 1];
    col_idx.push_back(triplets[k].col);
    values.push_back(triplets[k].value);
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return CsrMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

double CsrMatrix::at(Index r, Index c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return values_[row_ptr_[r] + (it - cols.begin())];
}

CsrMatrix CsrMatrix::transposed() const {
  std::vector<Index> ptr(static_cast<std::size_t>(cols_ + 1), 0);
  for (Index c : col_idx_) ++ptr[c + 1];
  std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
  std::vector<Index> idx(col_idx_.size());
  std::vector<double> val(values_.size());
  std::vector<Index> next(ptr.begin(), ptr.end() - 1);
  for (Index r = 0; r < rows_; ++r)
    for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const Index dst = next[col_idx_[p]]++;
      idx[dst] = r;
      val[dst] = values_[p];
    }
  return CsrMatrix(cols_, rows_, std::move(ptr), std::move(idx), std::move(val));
}

bool CsrMatrix::same_pattern(const CsrMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && row_ptr_ == o.row_ptr_ && col_idx_ == o.col_idx_;
}

DenseMatrix csr_to_dense(const CsrMatrix& a) {
  DenseMatrix d(a.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) d(r, cols[k]) = vals[k];
  }
  return d;
}

namespace {

// Rebuilds a CSR whose rows are given in `order` (new row i = old row order[i])
// with columns mapped through `col_map` and re-sorted.
CsrMatrix remap(const CsrMatrix& a, std::span<const Index> order, std::span<const Index> col_map) {
  std::vector<Index> ptr(static_cast<std::size_t>(a.rows() + 1), 0);
  std::vector<Index> idx;
  std::vector<double> val;
  idx.reserve(static_cast<std::size_t>(a.nnz()));
  val.reserve(static_cast<std::size_t>(a.nnz()));
  std::vector<std::pair<Index, double>> row;
  for (Index i = 0; i < a.rows(); ++i) {
    const Index src = order.empty() ? i : order[i];
    const auto cols = a.row_cols(src);
    const auto vals = a.row_values(src);
    row.clear();
    for (std::size_t k = 0; k < cols.size(); ++k)
      row.emplace_back(col_map.empty() ? cols[k] : col_map[cols[k]], vals[k]);
    if (!col_map.empty())
      std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [c, v] : row) {
      idx.push_back(c);
      val.push_back(v);
    }
    ptr[i + 1] = static_cast<Index>(idx.size());
  }
  return CsrMatrix(a.rows(), a.cols(), std::move(ptr), std::move(idx), std::move(val));
}

}  // namespace

CsrMatrix permute_cols(const CsrMatrix& a, const Permutation& p) {
  if (p.size() != a.cols()) throw DimensionError("permute_cols: permutation length mismatch");
  return remap(a, {}, p.inverse());
}

CsrMatrix permute_rows(const CsrMatrix& a, const Permutation& p) {
  if (p.size() != a.rows()) throw DimensionError("permute_rows: permutation length mismatch");
  return remap(a, p.forward(), {});
}

CsrMatrix permute_symmetric(const CsrMatrix& a, const Permutation& p) {
  if (a.rows() != a.cols()) throw DimensionError("permute_symmetric: matrix not square");
  if (p.size() != a.rows()) throw DimensionError("permute_symmetric: permutation length mismatch");
  return remap(a, p.forward(), p.inverse());
}

CsrMatrix extract_sub_csr(const CsrMatrix& a, Index row0, Index row1, Index col0, Index col1) {
  if (row0 < 0 || row0 > row1 || row1 > a.rows() || col0 < 0 || col0 > col1 || col1 > a.cols())
    throw DimensionError("extract_sub_csr: invalid window");
  const Index nr = row1 - row0;
  std::vector<Index> ptr(static_cast<std::size_t>(nr + 1), 0);
  std::vector<Index> idx;
  std::vector<double> val;
  for (Index r = row0; r < row1; ++r) {
    const auto cols = a.row_cols(r);
    const auto first = std::lower_bound(cols.begin(), cols.end(), col0);
    const auto last = std::lower_bound(first, cols.end(), col1);
    const Index base = a.row_ptr()[r];
    for (auto it = first; it != last; ++it) {
      idx.push_back(*it - col0);
      val.push_back(a.values()[base + (it - cols.begin())]);
    }
    ptr[r - row0 + 1] = static_cast<Index>(idx.size());
  }
  return CsrMatrix(nr, col1 - col0, std::move(ptr), std::move(idx), std::move(val));
}

GatheredRows gather_nonempty_rows(const CsrMatrix& a) {
  GatheredRows out;
  std::vector<Index> ptr{0};
  std::vector<Index> idx;
  std::vector<double> val;
  idx.reserve(static_cast<std::size_t>(a.nnz()));
  val.reserve(static_cast<std::size_t>(a.nnz()));
  for (Index r = 0; r < a.rows(); ++r) {
    if (a.row_nnz(r) == 0) continue;
    out.row_map.push_back(r);
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    idx.insert(idx.end(), cols.begin(), cols.end());
    val.insert(val.end(), vals.begin(), vals.end());
    ptr.push_back(static_cast<Index>(idx.size()));
  }
  const auto nr = static_cast<Index>(out.row_map.size());
  out.compact = CsrMatrix(nr, a.cols(), std::move(ptr), std::move(idx), std::move(val));
  return out;
}

std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x) {
  if (static_cast<Index>(x.size()) != a.cols()) throw DimensionError("spmv: length mismatch");
  std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    double s = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
  return y;
}

std::vector<double> spmv_transposed(const CsrMatrix& a, std::span<const double> x) {
  if (static_cast<Index>(x.size()) != a.rows())
    throw DimensionError("spmv_transposed: length mismatch");
  std::vector<double> y(static_cast<std::size_t>(a.cols()), 0.0);
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) y[cols[k]] += vals[k] * x[r];
  }
  return y;
}

bool is_structurally_symmetric(const CsrMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const CsrMatrix t = a.transposed();
  return a.same_pattern(t);
}

}  // namespace schur
