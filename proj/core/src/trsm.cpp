#include "schur/trsm.hpp"

#include <algorithm>
#include <string>

#include "dense_kernels.hpp"

namespace schur {

std::string_view to_string(TrsmVariant v) {
  switch (v) {
    case TrsmVariant::Baseline: return "baseline";
    case TrsmVariant::RhsSplit: return "rhs_split";
    case TrsmVariant::FactorSplit: return "factor_split";
  }
  return "?";
}

std::string_view to_string(FactorStorage s) { return s == FactorStorage::Dense ? "dense" : "sparse"; }

TrsmVariant parse_trsm_variant(std::string_view name) {
  if (name == "baseline") return TrsmVariant::Baseline;
  if (name == "rhs_split") return TrsmVariant::RhsSplit;
  if (name == "factor_split") return TrsmVariant::FactorSplit;
  throw ParameterError("unknown TRSM variant '" + std::string(name) + "'");
}

FactorStorage parse_factor_storage(std::string_view name) {
  if (name == "dense") return FactorStorage::Dense;
  if (name == "sparse") return FactorStorage::Sparse;
  throw ParameterError("unknown factor storage '" + std::string(name) + "'");
}

namespace {

void check_factor(const CsrMatrix& l, ConstDenseView x) {
  if (l.rows() != l.cols()) throw DimensionError("trsm: factor is not square");
  if (x.rows() != l.rows()) throw DimensionError("trsm: RHS row count differs from factor order");
  for (Index i = 0; i < l.rows(); ++i) {
    const auto cols = l.row_cols(i);
    if (!cols.empty() && cols.back() > i)
      throw ConsistencyError("trsm: factor has an entry above the diagonal in row " + std::to_string(i));
    if (cols.empty() || cols.back() != i || l.row_values(i).back() == 0.0)
      throw SingularError("trsm: zero diagonal in row " + std::to_string(i), i);
  }
}

void check_columns(const SteppedProfile& profile, ConstDenseView x) {
  if (profile.rows != x.rows() || profile.cols != x.cols())
    throw ConsistencyError("trsm: profile dimensions do not match the RHS");
  check_profile(profile, x);
}

}  // namespace

FlopCounter trsm_baseline(const CsrMatrix& l, DenseView x, FactorStorage storage) {
  check_factor(l, x);
  if (storage == FactorStorage::Sparse) return detail::sparse_trsm_lower(l, x);
  const DenseMatrix dense = csr_to_dense(l);
  return detail::dense_trsm_lower(dense.view(), x);
}

FlopCounter trsm_rhs_split(const CsrMatrix& l, DenseView x, const SteppedProfile& profile,
                           const Partition& partition, FactorStorage storage) {
  check_factor(l, x);
  check_columns(profile, x);
  const Index n = l.rows();
  DenseMatrix dense;
  if (storage == FactorStorage::Dense) dense = csr_to_dense(l);

  FlopCounter flops;
  for (const BlockRange& blk : block_boundaries(x.cols(), partition)) {
    const auto first = profile.col_pivots.begin() + blk.begin;
    const Index r = *std::min_element(first, first + blk.size());
    if (r >= n) continue;  // all columns empty
    DenseView rhs = x.block(r, blk.begin, n - r, blk.size());
    if (storage == FactorStorage::Sparse) {
      flops += detail::sparse_trsm_lower(extract_sub_csr(l, r, n, r, n), rhs);
    } else {
      flops += detail::dense_trsm_lower(dense.view().block(r, r, n - r, n - r), rhs);
    }
  }
  return flops;
}

std::vector<Index> trsm_width_schedule(const SteppedProfile& profile,
                                       std::span<const BlockRange> factor_blocks) {
  const std::vector<Index> trails = closed_row_trails(profile);
  std::vector<Index> widths;
  widths.reserve(factor_blocks.size());
  for (const BlockRange& b : factor_blocks) {
    if (b.begin < 0 || b.end > profile.rows || b.begin > b.end)
      throw DimensionError("trsm_width_schedule: block outside the profile");
    widths.push_back(b.size() == 0 ? 0 : trails[b.end - 1] + 1);
  }
  return widths;
}

FlopCounter trsm_factor_split(const CsrMatrix& l, DenseView x, const SteppedProfile& profile,
                              const Partition& partition, FactorStorage storage, bool pruning) {
  check_factor(l, x);
  check_columns(profile, x);
  const Index n = l.rows();
  const auto blocks = block_boundaries(n, partition);
  const auto widths = trsm_width_schedule(profile, blocks);

  FlopCounter flops;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Index r0 = blocks[b].begin, r1 = blocks[b].end, w = widths[b];
    if (w == 0) continue;
    DenseView top = x.block(r0, 0, r1 - r0, w);

    const CsrMatrix diag = extract_sub_csr(l, r0, r1, r0, r1);
    if (storage == FactorStorage::Sparse) {
      flops += detail::sparse_trsm_lower(diag, top);
    } else {
      const DenseMatrix d = csr_to_dense(diag);
      flops += detail::dense_trsm_lower(d.view(), top);
    }
    if (r1 == n) continue;

    DenseView bottom = x.block(r1, 0, n - r1, w);
    const CsrMatrix sub = extract_sub_csr(l, r1, n, r0, r1);
    if (pruning) {
      const GatheredRows g = gather_nonempty_rows(sub);
      if (g.row_map.empty()) continue;
      if (storage == FactorStorage::Sparse) {
        // The sparse product already skips empty rows; subtract straight into place.
        flops += detail::sparse_gemm_sub_rows(g.compact, top, g.row_map, bottom);
      } else {
        const DenseMatrix d = csr_to_dense(g.compact);
        DenseMatrix update(g.compact.rows(), w);
        flops += detail::dense_gemm(-1.0, d.view(), top, 0.0, update.view());
        scatter_add_rows(update.view(), g.row_map, bottom);
      }
    } else if (storage == FactorStorage::Sparse) {
      flops += detail::sparse_gemm_sub(sub, top, bottom);
    } else {
      const DenseMatrix d = csr_to_dense(sub);
      flops += detail::dense_gemm(-1.0, d.view(), top, 1.0, bottom);
    }
  }
  return flops;
}

FlopCounter trsm(const CsrMatrix& l, DenseView x, const SteppedProfile& profile, const TrsmConfig& config) {
  switch (config.variant) {
    case TrsmVariant::Baseline: return trsm_baseline(l, x, config.storage);
    case TrsmVariant::RhsSplit: return trsm_rhs_split(l, x, profile, config.partition, config.storage);
    case TrsmVariant::FactorSplit:
      return trsm_factor_split(l, x, profile, config.partition, config.storage, config.pruning);
  }
  return {};
}

}  // namespace schur
