#pragma once

#include <span>
#include <vector>

#include "schur/errors.hpp"

namespace schur {

/// Bijection on {0..n-1}.  forward[new] = old, inverse[old] = new.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(Index n);
  /// Throws ConsistencyError if `forward` is not a bijection.
  static Permutation from_forward(std::vector<Index> forward);

  Index size() const { return static_cast<Index>(forward_.size()); }
  Index old_of(Index new_index) const { return forward_[new_index]; }
  Index new_of(Index old_index) const { return inverse_[old_index]; }

  std::span<const Index> forward() const { return forward_; }
  std::span<const Index> inverse() const { return inverse_; }

  Permutation inverted() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> forward_;
  std::vector<Index> inverse_;
};

/// out[new] = in[old]
std::vector<double> permute_vector(const Permutation& p, std::span<const double> in);
/// out[old] = in[new]
std::vector<double> unpermute_vector(const Permutation& p, std::span<const double> in);

}  // namespace schur
