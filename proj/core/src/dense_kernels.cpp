#include "dense_kernels.hpp"

#include <Eigen/Core>

namespace schur::detail {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<RowMajor, 0, Eigen::OuterStride<>>;
using ConstMap = Eigen::Map<const RowMajor, 0, Eigen::OuterStride<>>;

Map as_eigen(DenseView v) { return {v.data(), v.rows(), v.cols(), Eigen::OuterStride<>(v.ld())}; }
ConstMap as_eigen(ConstDenseView v) { return {v.data(), v.rows(), v.cols(), Eigen::OuterStride<>(v.ld())}; }

inline std::uint64_t u(Index v) { return static_cast<std::uint64_t>(v); }

void scale(Map c, double beta) {
  if (beta == 0.0)
    c.setZero();
  else if (beta != 1.0)
    c *= beta;
}

}  // namespace

FlopCounter dense_trsm_lower(ConstDenseView l, DenseView x) {
  if (l.rows() != l.cols() || l.rows() != x.rows()) throw DimensionError("dense_trsm_lower: shape mismatch");
  const Index n = x.rows(), w = x.cols();
  if (n == 0 || w == 0) return {};
  Map xm = as_eigen(x);
  as_eigen(l).triangularView<Eigen::Lower>().solveInPlace(xm);
  return {u(w) * u(n) * u(n - 1) / 2, u(w) * u(n)};
}

FlopCounter dense_gemm(double alpha, ConstDenseView a, ConstDenseView b, double beta, DenseView c) {
  if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
    throw DimensionError("dense_gemm: shape mismatch");
  const Index m = c.rows(), n = c.cols(), k = a.cols();
  if (m == 0 || n == 0) return {};
  Map cm = as_eigen(c);
  scale(cm, beta);
  if (k == 0) return {};
  cm.noalias() += alpha * as_eigen(a) * as_eigen(b);
  return {u(m) * u(n) * u(k), 0};
}

FlopCounter dense_gemm_tn(double alpha, ConstDenseView a, ConstDenseView b, double beta, DenseView c) {
  if (a.rows() != b.rows() || a.cols() != c.rows() || b.cols() != c.cols())
    throw DimensionError("dense_gemm_tn: shape mismatch");
  const Index m = c.rows(), n = c.cols(), k = a.rows();
  if (m == 0 || n == 0) return {};
  Map cm = as_eigen(c);
  scale(cm, beta);
  if (k == 0) return {};
  cm.noalias() += alpha * as_eigen(a).transpose() * as_eigen(b);
  return {u(m) * u(n) * u(k), 0};
}

FlopCounter dense_syrk_lower(ConstDenseView a, double beta, DenseView f) {
  if (f.rows() != f.cols() || f.rows() != a.cols()) throw DimensionError("dense_syrk_lower: shape mismatch");
  const Index n = a.cols(), k = a.rows();
  if (n == 0) return {};
  Map fm = as_eigen(f);
  if (beta == 0.0)
    fm.triangularView<Eigen::Lower>().setZero();
  else if (beta != 1.0)
    fm.triangularView<Eigen::Lower>() *= beta;
  if (k == 0) return {};
  fm.selfadjointView<Eigen::Lower>().rankUpdate(as_eigen(a).transpose(), 1.0);
  return {u(k) * u(n) * u(n + 1) / 2, 0};
}

FlopCounter dense_gemv(ConstDenseView a, std::span<const double> x, std::span<double> y) {
  if (static_cast<Index>(x.size()) != a.cols() || static_cast<Index>(y.size()) != a.rows())
    throw DimensionError("dense_gemv: shape mismatch");
  if (a.rows() == 0) return {};
  Eigen::Map<Eigen::VectorXd> ym(y.data(), a.rows());
  if (a.cols() == 0) {
    ym.setZero();
    return {};
  }
  ym.noalias() = as_eigen(a) * Eigen::Map<const Eigen::VectorXd>(x.data(), a.cols());
  return {u(a.rows()) * u(a.cols()), 0};
}

FlopCounter sparse_trsm_lower(const CsrMatrix& l, DenseView x) {
  const Index n = l.rows();
  if (l.cols() != n || x.rows() != n) throw DimensionError("sparse_trsm_lower: shape mismatch");
  const Index w = x.cols();
  if (n == 0 || w == 0) return {};
  for (Index i = 0; i < n; ++i) {
    const auto cols = l.row_cols(i);
    const auto vals = l.row_values(i);
    double* xi = x.row(i);
    const std::size_t off = cols.size() - 1;  // diagonal is last
    for (std::size_t t = 0; t < off; ++t) {
      const double v = vals[t];
      const double* xj = x.row(cols[t]);
      for (Index c = 0; c < w; ++c) xi[c] -= v * xj[c];
    }
    const double d = vals[off];
    for (Index c = 0; c < w; ++c) xi[c] /= d;
  }
  return {u(w) * u(l.nnz() - n), u(w) * u(n)};
}

namespace {

FlopCounter gemm_sub_rows(const CsrMatrix& a, ConstDenseView b, DenseView c, auto&& target_row) {
  const Index w = c.cols();
  if (w == 0) return {};
  for (Index i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double* ci = c.row(target_row(i));
    for (std::size_t t = 0; t < cols.size(); ++t) {
      const double v = vals[t];
      const double* bj = b.row(cols[t]);
      for (Index j = 0; j < w; ++j) ci[j] -= v * bj[j];
    }
  }
  return {u(w) * u(a.nnz()), 0};
}

}  // namespace

FlopCounter sparse_gemm_sub(const CsrMatrix& a, ConstDenseView b, DenseView c) {
  if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
    throw DimensionError("sparse_gemm_sub: shape mismatch");
  return gemm_sub_rows(a, b, c, [](Index i) { return i; });
}

FlopCounter sparse_gemm_sub_rows(const CsrMatrix& a, ConstDenseView b, std::span<const Index> row_map, DenseView c) {
  if (a.cols() != b.rows() || static_cast<Index>(row_map.size()) != a.rows() || b.cols() != c.cols())
    throw DimensionError("sparse_gemm_sub_rows: shape mismatch");
  for (Index r : row_map)
    if (r < 0 || r >= c.rows()) throw DimensionError("sparse_gemm_sub_rows: row map out of range");
  return gemm_sub_rows(a, b, c, [&](Index i) { return row_map[i]; });
}

}  // namespace schur::detail
