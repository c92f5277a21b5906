#include "schur/syrk.hpp"

#include <algorithm>
#include <string>

#include "dense_kernels.hpp"

namespace schur {

std::string_view to_string(SyrkVariant v) {
  switch (v) {
    case SyrkVariant::Baseline: return "baseline";
    case SyrkVariant::InputSplit: return "input_split";
    case SyrkVariant::OutputSplit: return "output_split";
  }
  return "?";
}

SyrkVariant parse_syrk_variant(std::string_view name) {
  if (name == "baseline") return SyrkVariant::Baseline;
  if (name == "input_split") return SyrkVariant::InputSplit;
  if (name == "output_split") return SyrkVariant::OutputSplit;
  throw ParameterError("unknown SYRK variant '" + std::string(name) + "'");
}

SyrkResult syrk_baseline(ConstDenseView y) {
  SyrkResult out{DenseMatrix(y.cols(), y.cols()), {}};
  out.flops = detail::dense_syrk_lower(y, 0.0, out.f.view());
  return out;
}

SyrkResult syrk_input_split(ConstDenseView y, const SteppedProfile& profile, const Partition& partition) {
  check_profile(profile, y);
  SyrkResult out{DenseMatrix(y.cols(), y.cols()), {}};
  for (const BlockRange& blk : block_boundaries(y.rows(), partition)) {
    const auto first = profile.row_trails.begin() + blk.begin;
    const Index w = *std::max_element(first, first + blk.size()) + 1;
    if (w == 0) continue;
    out.flops += detail::dense_syrk_lower(y.block(blk.begin, 0, blk.size(), w), 1.0,
                                          out.f.view().block(0, 0, w, w));
  }
  return out;
}

SyrkResult syrk_output_split(ConstDenseView y, const SteppedProfile& profile, const Partition& partition) {
  check_profile(profile, y);
  const Index n = y.rows();
  SyrkResult out{DenseMatrix(y.cols(), y.cols()), {}};
  for (const BlockRange& blk : block_boundaries(y.cols(), partition)) {
    const auto first = profile.col_pivots.begin() + blk.begin;
    const Index k0 = *std::min_element(first, first + blk.size());
    if (k0 >= n) continue;  // block columns are all zero
    const Index k = n - k0;
    const ConstDenseView cols = y.block(k0, blk.begin, k, blk.size());
    out.flops += detail::dense_syrk_lower(cols, 0.0, out.f.view().block(blk.begin, blk.begin, blk.size(), blk.size()));
    if (blk.begin > 0)
      out.flops += detail::dense_gemm_tn(1.0, cols, y.block(k0, 0, k, blk.begin), 0.0,
                                         out.f.view().block(blk.begin, 0, blk.size(), blk.begin));
  }
  return out;
}

SyrkResult syrk(ConstDenseView y, const SteppedProfile& profile, const SyrkConfig& config) {
  switch (config.variant) {
    case SyrkVariant::Baseline: return syrk_baseline(y);
    case SyrkVariant::InputSplit: return syrk_input_split(y, profile, config.partition);
    case SyrkVariant::OutputSplit: return syrk_output_split(y, profile, config.partition);
  }
  return {};
}

void symmetrize_lower(DenseView f) {
  if (f.rows() != f.cols()) throw DimensionError("symmetrize_lower: matrix not square");
  for (Index r = 0; r < f.rows(); ++r)
    for (Index c = r + 1; c < f.cols(); ++c) f(r, c) = f(c, r);
}

}  // namespace schur
