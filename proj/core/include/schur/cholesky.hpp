#pragma once

#include <memory>
#include <span>
#include <vector>

#include "schur/csr.hpp"
#include "schur/ordering.hpp"
#include "schur/permutation.hpp"

namespace schur {

/// Structure-only result of the analysis phase.  Depends on the sparsity
/// pattern of K and the ordering, never on values.
struct SymbolicFactor {
  Index n = 0;
  Permutation perm;                 // applied symmetrically: P K P^T
  std::vector<Index> etree;         // parent in the elimination tree, -1 for roots
  std::vector<Index> l_row_ptr;     // row pattern of L, diagonal last in each row
  std::vector<Index> l_col_idx;
  std::vector<Index> k_row_ptr;     // pattern of the analysed K, for reuse checks
  std::vector<Index> k_col_idx;

  Index factor_nnz() const { return static_cast<Index>(l_col_idx.size()); }
};

/// P K P^T = L L^T with L lower triangular (CSR, positive diagonal).
class CholeskyFactor {
 public:
  CholeskyFactor(std::shared_ptr<const SymbolicFactor> symbolic, CsrMatrix l)
      : symbolic_(std::move(symbolic)), l_(std::move(l)) {}

  Index n() const { return symbolic_->n; }
  const Permutation& perm() const { return symbolic_->perm; }
  const CsrMatrix& l() const { return l_; }
  const SymbolicFactor& symbolic() const { return *symbolic_; }
  std::shared_ptr<const SymbolicFactor> symbolic_ptr() const { return symbolic_; }

  /// Solves K x = b.
  std::vector<double> solve(std::span<const double> b) const;

  /// Test hook: overwrite the diagonal entry of row `row` in L.
  void overwrite_diagonal_for_testing(Index row, double value);

 private:
  std::shared_ptr<const SymbolicFactor> symbolic_;
  CsrMatrix l_;
};

/// Elimination tree of P K P^T and the row patterns of its Cholesky factor.
SymbolicFactor symbolic_factor(const CsrMatrix& k, Permutation perm);

/// Fills the values of L.  `k` must have exactly the pattern that was
/// analysed; throws NotSpdError (with the failing permuted column) on a
/// non-positive pivot.
CholeskyFactor numeric_factor(const CsrMatrix& k, std::shared_ptr<const SymbolicFactor> symbolic);

/// Ordering, analysis and numeric factorization in one call.
CholeskyFactor factorize(const CsrMatrix& k, OrderingMethod method = OrderingMethod::Amd);

/// ||P K P^T - L L^T||_F / ||K||_F, accumulated densely one column of L at a time.
double factorization_residual(const CsrMatrix& k, const CholeskyFactor& f);

enum class Transpose { No, Yes };

/// Solves L x = b (or L^T x = b) for lower-triangular CSR L.
std::vector<double> trsv_lower(const CsrMatrix& l, std::span<const double> b,
                               Transpose transpose = Transpose::No);

}  // namespace schur
