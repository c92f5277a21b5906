// Dense reference evaluation of the local dual operator.  Deliberately plain
// loops: no dense kernel library, no sparse factor, no blocking.

#include <cmath>
#include <string>

#include "schur/assembler.hpp"

namespace schur {

DenseMatrix oracle_sc(const CsrMatrix& k, const CsrMatrix& bt) {
  const Index n = k.rows();
  if (k.cols() != n || bt.rows() != n) throw DimensionError("oracle_sc: shape mismatch");
  const Index m = bt.cols();

  // In-place dense Cholesky, lower triangle of g.
  DenseMatrix g = csr_to_dense(k);
  for (Index j = 0; j < n; ++j) {
    double d = g(j, j);
    for (Index p = 0; p < j; ++p) d -= g(j, p) * g(j, p);
    if (!(d > 0.0)) throw NotSpdError("oracle_sc: matrix is not positive definite at column " + std::to_string(j), j);
    d = std::sqrt(d);
    g(j, j) = d;
    for (Index i = j + 1; i < n; ++i) {
      double v = g(i, j);
      for (Index p = 0; p < j; ++p) v -= g(i, p) * g(j, p);
      g(i, j) = v / d;
    }
  }

  // Z = K^{-1} B~^T, all columns at once, rows of Z contiguous.
  DenseMatrix z = csr_to_dense(bt);
  for (Index i = 0; i < n; ++i) {
    double* zi = &z(i, 0);
    for (Index p = 0; p < i; ++p) {
      const double v = g(i, p);
      const double* zp = &z(p, 0);
      for (Index c = 0; c < m; ++c) zi[c] -= v * zp[c];
    }
    for (Index c = 0; c < m; ++c) zi[c] /= g(i, i);
  }
  for (Index i = n - 1; i >= 0; --i) {
    double* zi = &z(i, 0);
    for (Index c = 0; c < m; ++c) zi[c] /= g(i, i);
    for (Index p = 0; p < i; ++p) {
      const double v = g(i, p);
      double* zp = &z(p, 0);
      for (Index c = 0; c < m; ++c) zp[c] -= v * zi[c];
    }
  }

  // F = B~ Z = (B~^T)^T Z.
  DenseMatrix f(m, m);
  for (Index r = 0; r < n; ++r) {
    const auto cols = bt.row_cols(r);
    const auto vals = bt.row_values(r);
    const double* zr = &z(r, 0);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      double* fr = &f(cols[t], 0);
      for (Index c = 0; c < m; ++c) fr[c] += vals[t] * zr[c];
    }
  }
  return f;
}

DenseMatrix oracle_sc(const SubdomainProblem& problem) { return oracle_sc(problem.k_reg, problem.bt); }

}  // namespace schur
