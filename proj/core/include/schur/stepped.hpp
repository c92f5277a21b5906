#pragma once

#include <span>
#include <string>
#include <vector>

#include "schur/csr.hpp"
#include "schur/dense.hpp"
#include "schur/permutation.hpp"

namespace schur {

/// Column pivots (first nonzero row per column, `rows` when the column is
/// empty) and row trails (last nonzero column per row, -1 when empty).
struct SteppedProfile {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> col_pivots;
  std::vector<Index> row_trails;

  /// Column pivots never decrease from left to right.
  bool pivots_sorted() const;

  friend bool operator==(const SteppedProfile&, const SteppedProfile&) = default;
};

/// Stable sort of the columns by ascending pivot; empty columns go last.
Permutation stepped_permutation(const CsrMatrix& bt);

SteppedProfile compute_profile(const CsrMatrix& m);
/// An entry is nonzero iff it is exactly != 0.0.
SteppedProfile compute_profile(ConstDenseView m);

/// Throws ConsistencyError unless `profile` describes `m` exactly.
void check_profile(const SteppedProfile& profile, ConstDenseView m);

/// For each row r, the largest column whose pivot is <= r (or -1).  These
/// are the row trails after a forward substitution has filled every column
/// downwards from its pivot.
std::vector<Index> closed_row_trails(const SteppedProfile& profile);

/// Largest gap between consecutive sorted pivots (including the gaps to row 0
/// and to the last row) relative to the ideal spacing rows / cols.  A perfectly
/// uniform profile scores about 1.
double pivot_uniformity(const SteppedProfile& profile);

/// Uniform partition policy: a fixed block size or a fixed block count.
struct Partition {
  enum class Kind { FixedSize, FixedCount };
  Kind kind = Kind::FixedSize;
  Index value = 500;

  static Partition fixed_size(Index s) { return {Kind::FixedSize, s}; }
  static Partition fixed_count(Index c) { return {Kind::FixedCount, c}; }

  std::string policy_name() const { return kind == Kind::FixedSize ? "size" : "count"; }
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct BlockRange {
  Index begin = 0;
  Index end = 0;
  Index size() const { return end - begin; }
  friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

/// Contiguous blocks covering [0, extent); only the last may be smaller.
/// A fixed count c uses blocks of ceil(extent / c).
std::vector<BlockRange> block_boundaries(Index extent, const Partition& policy);

}  // namespace schur
