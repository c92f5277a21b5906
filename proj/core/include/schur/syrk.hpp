#pragma once

#include <string_view>

#include "schur/dense.hpp"
#include "schur/flops.hpp"
#include "schur/stepped.hpp"

namespace schur {

enum class SyrkVariant { Baseline, InputSplit, OutputSplit };

std::string_view to_string(SyrkVariant v);
SyrkVariant parse_syrk_variant(std::string_view name);

struct SyrkConfig {
  SyrkVariant variant = SyrkVariant::InputSplit;
  Partition partition = Partition::fixed_size(500);
};

/// F = Y^T Y, lower triangle only; the strict upper triangle is zero.
struct SyrkResult {
  DenseMatrix f;
  FlopCounter flops;
};

SyrkResult syrk_baseline(ConstDenseView y);

/// Splits the k loop: each block row of Y contributes a SYRK of its leading
/// columns (up to the largest row trail in the block) to the top-left corner
/// of F.  Blocks are accumulated top to bottom.
SyrkResult syrk_input_split(ConstDenseView y, const SteppedProfile& profile, const Partition& partition);

/// Splits F into block rows: the diagonal block is a SYRK of the matching
/// block column of Y, the part left of it a GEMM with the preceding columns;
/// both skip the rows above the block's first column pivot.
SyrkResult syrk_output_split(ConstDenseView y, const SteppedProfile& profile, const Partition& partition);

/// Dispatches on config.variant.  `profile` must describe y.
SyrkResult syrk(ConstDenseView y, const SteppedProfile& profile, const SyrkConfig& config);

/// Copies the lower triangle onto the upper one.
void symmetrize_lower(DenseView f);

}  // namespace schur
