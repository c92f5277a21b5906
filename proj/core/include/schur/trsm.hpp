#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "schur/csr.hpp"
#include "schur/dense.hpp"
#include "schur/flops.hpp"
#include "schur/stepped.hpp"

namespace schur {

enum class TrsmVariant { Baseline, RhsSplit, FactorSplit };
enum class FactorStorage { Sparse, Dense };

std::string_view to_string(TrsmVariant v);
std::string_view to_string(FactorStorage s);
TrsmVariant parse_trsm_variant(std::string_view name);
FactorStorage parse_factor_storage(std::string_view name);

struct TrsmConfig {
  TrsmVariant variant = TrsmVariant::FactorSplit;
  Partition partition = Partition::fixed_size(500);
  FactorStorage storage = FactorStorage::Dense;
  bool pruning = true;  // factor split only
};

// All routines solve L X = X0 in place for a lower-triangular CSR factor L
// (diagonal stored last in every row) and return the work performed.  A zero
// or missing diagonal raises SingularError before X is touched.

/// Full forward substitution over all rows and columns.  Dense storage
/// expands L once and calls the dense kernel.
FlopCounter trsm_baseline(const CsrMatrix& l, DenseView x, FactorStorage storage);

/// Splits X into column blocks; block [c0, c1) is solved with the trailing
/// subfactor L[r:, r:] where r is the smallest pivot in the block.
FlopCounter trsm_rhs_split(const CsrMatrix& l, DenseView x, const SteppedProfile& profile,
                           const Partition& partition, FactorStorage storage = FactorStorage::Sparse);

/// Blocked forward substitution over diagonal blocks of L.  For each block a
/// small TRSM with the diagonal block is followed by a GEMM update with the
/// sub-diagonal block, both restricted to the columns that can be nonzero so
/// far.  With pruning, the empty rows of the sub-diagonal block are gathered
/// out before the GEMM and the result is scattered back.
FlopCounter trsm_factor_split(const CsrMatrix& l, DenseView x, const SteppedProfile& profile,
                              const Partition& partition, FactorStorage storage, bool pruning);

/// Active RHS width per factor block: 1 + the largest column whose pivot
/// lies above the end of the block (0 if none).
std::vector<Index> trsm_width_schedule(const SteppedProfile& profile,
                                       std::span<const BlockRange> factor_blocks);

/// Dispatches on config.variant.  `profile` must describe x.
FlopCounter trsm(const CsrMatrix& l, DenseView x, const SteppedProfile& profile, const TrsmConfig& config);

}  // namespace schur
