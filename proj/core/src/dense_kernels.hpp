#pragma once

// Thin row-major wrappers over Eigen plus the matching FLOP formulas.
// Zero-sized operands are no-ops.

#include <span>

#include "schur/csr.hpp"
#include "schur/dense.hpp"
#include "schur/flops.hpp"

namespace schur::detail {

/// x <- l^{-1} x, l square lower triangular (non-unit).
FlopCounter dense_trsm_lower(ConstDenseView l, DenseView x);

/// c <- alpha * a * b + beta * c
FlopCounter dense_gemm(double alpha, ConstDenseView a, ConstDenseView b, double beta, DenseView c);

/// c <- alpha * a^T * b + beta * c
FlopCounter dense_gemm_tn(double alpha, ConstDenseView a, ConstDenseView b, double beta, DenseView c);

/// Lower triangle of f <- a^T a + beta * f.
FlopCounter dense_syrk_lower(ConstDenseView a, double beta, DenseView f);

/// y <- a x
FlopCounter dense_gemv(ConstDenseView a, std::span<const double> x, std::span<double> y);

/// x <- l^{-1} x for sparse lower-triangular l (diagonal stored last in each row).
FlopCounter sparse_trsm_lower(const CsrMatrix& l, DenseView x);

/// c <- c - a * b
FlopCounter sparse_gemm_sub(const CsrMatrix& a, ConstDenseView b, DenseView c);

/// c[row_map[i], :] -= a[i, :] * b
FlopCounter sparse_gemm_sub_rows(const CsrMatrix& a, ConstDenseView b, std::span<const Index> row_map, DenseView c);

}  // namespace schur::detail
