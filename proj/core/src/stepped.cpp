#include "schur/stepped.hpp"

#include <algorithm>
#include <numeric>

namespace schur {

bool SteppedProfile::pivots_sorted() const {
  return std::is_sorted(col_pivots.begin(), col_pivots.end());
}

SteppedProfile compute_profile(const CsrMatrix& m) {
  SteppedProfile p;
  p.rows = m.rows();
  p.cols = m.cols();
  p.col_pivots.assign(static_cast<std::size_t>(m.cols()), m.rows());
  p.row_trails.assign(static_cast<std::size_t>(m.rows()), -1);
  for (Index r = 0; r < m.rows(); ++r) {
    const auto cols = m.row_cols(r);
    if (cols.empty()) continue;
    p.row_trails[r] = cols.back();
    for (Index c : cols) p.col_pivots[c] = std::min(p.col_pivots[c], r);
  }
  return p;
}

SteppedProfile compute_profile(ConstDenseView m) {
  SteppedProfile p;
  p.rows = m.rows();
  p.cols = m.cols();
  p.col_pivots.assign(static_cast<std::size_t>(m.cols()), m.rows());
  p.row_trails.assign(static_cast<std::size_t>(m.rows()), -1);
  Index unresolved = m.cols();
  for (Index r = 0; r < m.rows(); ++r) {
    const double* row = m.row(r);
    for (Index c = m.cols() - 1; c >= 0; --c)
      if (row[c] != 0.0) {
        p.row_trails[r] = c;
        break;
      }
    if (unresolved == 0) continue;
    for (Index c = 0; c <= p.row_trails[r]; ++c)
      if (row[c] != 0.0 && p.col_pivots[c] == m.rows()) {
        p.col_pivots[c] = r;
        --unresolved;
      }
  }
  return p;
}

void check_profile(const SteppedProfile& profile, ConstDenseView m) {
  if (profile.rows != m.rows() || profile.cols != m.cols())
    throw ConsistencyError("stepped profile dimensions do not match the matrix");
  if (compute_profile(m) != profile)
    throw ConsistencyError("stepped profile does not describe the matrix");
}

Permutation stepped_permutation(const CsrMatrix& bt) {
  const SteppedProfile p = compute_profile(bt);
  std::vector<Index> order(static_cast<std::size_t>(bt.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return p.col_pivots[a] < p.col_pivots[b]; });
  return Permutation::from_forward(std::move(order));
}

std::vector<Index> closed_row_trails(const SteppedProfile& profile) {
  std::vector<Index> trails(static_cast<std::size_t>(profile.rows), -1);
  for (Index c = 0; c < profile.cols; ++c) {
    const Index piv = profile.col_pivots[c];
    if (piv < profile.rows) trails[piv] = std::max(trails[piv], c);
  }
  for (Index r = 1; r < profile.rows; ++r) trails[r] = std::max(trails[r], trails[r - 1]);
  return trails;
}

double pivot_uniformity(const SteppedProfile& profile) {
  std::vector<Index> piv;
  for (Index v : profile.col_pivots)
    if (v < profile.rows) piv.push_back(v);
  if (piv.empty() || profile.rows == 0) return 0.0;
  std::sort(piv.begin(), piv.end());
  Index gap = piv.front();
  for (std::size_t i = 1; i < piv.size(); ++i) gap = std::max(gap, piv[i] - piv[i - 1]);
  gap = std::max(gap, profile.rows - piv.back());
  const double ideal = static_cast<double>(profile.rows) / static_cast<double>(piv.size());
  return static_cast<double>(gap) / ideal;
}

std::vector<BlockRange> block_boundaries(Index extent, const Partition& policy) {
  if (policy.value < 1) throw ParameterError("partition value must be >= 1");
  if (extent < 0) throw DimensionError("negative extent");
  const Index size = policy.kind == Partition::Kind::FixedSize
                         ? policy.value
                         : std::max<Index>(1, (extent + policy.value - 1) / policy.value);
  std::vector<BlockRange> blocks;
  for (Index b = 0; b < extent; b += size) blocks.push_back({b, std::min(b + size, extent)});
  return blocks;
}

}  // namespace schur
