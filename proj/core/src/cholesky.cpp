#include "schur/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schur/dense.hpp"

namespace schur {

SymbolicFactor symbolic_factor(const CsrMatrix& k, Permutation perm) {
  if (k.rows() != k.cols()) throw DimensionError("symbolic_factor: matrix not square");
  if (perm.size() != k.rows()) throw DimensionError("symbolic_factor: permutation length mismatch");
  const Index n = k.rows();
  const CsrMatrix c = permute_symmetric(k, perm);

  SymbolicFactor s;
  s.n = n;
  s.perm = std::move(perm);
  s.k_row_ptr.assign(k.row_ptr().begin(), k.row_ptr().end());
  s.k_col_idx.assign(k.col_idx().begin(), k.col_idx().end());

  // Elimination tree from the strictly lower part of each row (the matrix is
  // symmetric, so row k below the diagonal is column k above it).
  s.etree.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> ancestor(static_cast<std::size_t>(n), -1);
  for (Index row = 0; row < n; ++row)
    for (Index i : c.row_cols(row)) {
      if (i >= row) break;
      while (i != -1 && i < row) {
        const Index next = ancestor[i];
        ancestor[i] = row;
        if (next == -1) s.etree[i] = row;
        i = next;
      }
    }

  // Row pattern of L: the reach of row k's off-diagonal entries in the etree.
  s.l_row_ptr.assign(static_cast<std::size_t>(n + 1), 0);
  std::vector<Index> flag(static_cast<std::size_t>(n), -1);
  std::vector<Index> pattern;
  for (Index row = 0; row < n; ++row) {
    pattern.clear();
    flag[row] = row;
    for (Index i : c.row_cols(row)) {
      if (i >= row) break;
      for (; flag[i] != row; i = s.etree[i]) {
        pattern.push_back(i);
        flag[i] = row;
      }
    }
    std::sort(pattern.begin(), pattern.end());
    s.l_col_idx.insert(s.l_col_idx.end(), pattern.begin(), pattern.end());
    s.l_col_idx.push_back(row);
    s.l_row_ptr[row + 1] = static_cast<Index>(s.l_col_idx.size());
  }
  return s;
}

CholeskyFactor numeric_factor(const CsrMatrix& k, std::shared_ptr<const SymbolicFactor> symbolic) {
  const SymbolicFactor& s = *symbolic;
  if (k.rows() != s.n || k.cols() != s.n) throw DimensionError("numeric_factor: order mismatch");
  if (!std::equal(k.row_ptr().begin(), k.row_ptr().end(), s.k_row_ptr.begin(), s.k_row_ptr.end()) ||
      !std::equal(k.col_idx().begin(), k.col_idx().end(), s.k_col_idx.begin(), s.k_col_idx.end()))
    throw ConsistencyError("numeric_factor: matrix pattern differs from the analysed pattern");

  const Index n = s.n;
  const CsrMatrix c = permute_symmetric(k, s.perm);
  std::vector<double> lval(s.l_col_idx.size(), 0.0);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);

  for (Index row = 0; row < n; ++row) {
    double diag = 0.0;
    const auto cols = c.row_cols(row);
    const auto vals = c.row_values(row);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (cols[t] < row) x[cols[t]] = vals[t];
      else if (cols[t] == row) diag = vals[t];
    }
    // Forward solve with the leading block of L, one pattern entry at a time,
    // in ascending column order.
    const Index begin = s.l_row_ptr[row];
    const Index end = s.l_row_ptr[row + 1] - 1;  // last entry is the diagonal
    for (Index q = begin; q < end; ++q) {
      const Index j = s.l_col_idx[q];
      double v = x[j];
      const Index jb = s.l_row_ptr[j];
      const Index je = s.l_row_ptr[j + 1] - 1;
      for (Index t = jb; t < je; ++t) v -= lval[t] * x[s.l_col_idx[t]];
      v /= lval[je];
      x[j] = v;
      lval[q] = v;
      diag -= v * v;
    }
    if (!(diag > 0.0))
      throw NotSpdError("matrix is not positive definite: non-positive pivot at column " +
                            std::to_string(row) + " (original index " +
                            std::to_string(s.perm.old_of(row)) + ")",
                        row);
    lval[end] = std::sqrt(diag);
    for (Index q = begin; q < end; ++q) x[s.l_col_idx[q]] = 0.0;
  }
  CsrMatrix l(n, n, s.l_row_ptr, s.l_col_idx, std::move(lval));
  return CholeskyFactor(std::move(symbolic), std::move(l));
}

CholeskyFactor factorize(const CsrMatrix& k, OrderingMethod method) {
  auto symbolic = std::make_shared<const SymbolicFactor>(symbolic_factor(k, fill_reducing_order(k, method)));
  return numeric_factor(k, std::move(symbolic));
}

double factorization_residual(const CsrMatrix& k, const CholeskyFactor& f) {
  if (k.rows() != f.n()) throw DimensionError("factorization_residual: order mismatch");
  DenseMatrix d = csr_to_dense(permute_symmetric(k, f.perm()));
  const CsrMatrix lt = f.l().transposed();
  for (Index c = 0; c < lt.rows(); ++c) {
    const auto rows = lt.row_cols(c);
    const auto vals = lt.row_values(c);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b) d(rows[a], rows[b]) -= vals[a] * vals[b];
  }
  const double norm_k = frobenius_norm(csr_to_dense(k).view());
  return norm_k == 0.0 ? frobenius_norm(d.view()) : frobenius_norm(d.view()) / norm_k;
}

namespace {

double diagonal_of(const CsrMatrix& l, Index row) {
  const auto cols = l.row_cols(row);
  if (!cols.empty() && cols.back() > row)
    throw ConsistencyError("trsv_lower: entry above the diagonal in row " + std::to_string(row));
  if (cols.empty() || cols.back() != row || l.row_values(row).back() == 0.0)
    throw SingularError("triangular factor has a zero diagonal in row " + std::to_string(row), row);
  return l.row_values(row).back();
}

}  // namespace

std::vector<double> trsv_lower(const CsrMatrix& l, std::span<const double> b, Transpose transpose) {
  const Index n = l.rows();
  if (l.cols() != n || static_cast<Index>(b.size()) != n) throw DimensionError("trsv_lower: size mismatch");
  std::vector<double> x(b.begin(), b.end());
  if (transpose == Transpose::No) {
    for (Index i = 0; i < n; ++i) {
      const double d = diagonal_of(l, i);
      const auto cols = l.row_cols(i);
      const auto vals = l.row_values(i);
      double v = x[i];
      for (std::size_t t = 0; t + 1 < cols.size(); ++t) v -= vals[t] * x[cols[t]];
      x[i] = v / d;
    }
  } else {
    // Row i of L is column i of L^T: finalize x_i, then push it upwards.
    for (Index i = n - 1; i >= 0; --i) {
      const double d = diagonal_of(l, i);
      const auto cols = l.row_cols(i);
      const auto vals = l.row_values(i);
      x[i] /= d;
      const double xi = x[i];
      for (std::size_t t = 0; t + 1 < cols.size(); ++t) x[cols[t]] -= vals[t] * xi;
    }
  }
  return x;
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  auto y = permute_vector(perm(), b);
  y = trsv_lower(l_, y, Transpose::No);
  y = trsv_lower(l_, y, Transpose::Yes);
  return unpermute_vector(perm(), y);
}

void CholeskyFactor::overwrite_diagonal_for_testing(Index row, double value) {
  if (row < 0 || row >= l_.rows()) throw DimensionError("diagonal row out of range");
  l_.values()[l_.row_ptr()[row + 1] - 1] = value;
}

}  // namespace schur
