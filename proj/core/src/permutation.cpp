#include "schur/permutation.hpp"

#include <numeric>

namespace schur {

Permutation Permutation::identity(Index n) {
  std::vector<Index> f(static_cast<std::size_t>(n));
  std::iota(f.begin(), f.end(), Index{0});
  return from_forward(std::move(f));
}

Permutation Permutation::from_forward(std::vector<Index> forward) {
  Permutation p;
  const auto n = static_cast<Index>(forward.size());
  p.inverse_.assign(forward.size(), -1);
  for (Index i = 0; i < n; ++i) {
    const Index old = forward[i];
    if (old < 0 || old >= n || p.inverse_[old] != -1)
      throw ConsistencyError("permutation is not a bijection");
    p.inverse_[old] = i;
  }
  p.forward_ = std::move(forward);
  return p;
}

Permutation Permutation::inverted() const {
  return from_forward(inverse_);
}

bool Permutation::is_identity() const {
  for (Index i = 0; i < size(); ++i)
    if (forward_[i] != i) return false;
  return true;
}

std::vector<double> permute_vector(const Permutation& p, std::span<const double> in) {
  if (static_cast<Index>(in.size()) != p.size())
    throw DimensionError("permute_vector: length mismatch");
  std::vector<double> out(in.size());
  for (Index i = 0; i < p.size(); ++i) out[i] = in[p.old_of(i)];
  return out;
}

std::vector<double> unpermute_vector(const Permutation& p, std::span<const double> in) {
  if (static_cast<Index>(in.size()) != p.size())
    throw DimensionError("unpermute_vector: length mismatch");
  std::vector<double> out(in.size());
  for (Index i = 0; i < p.size(); ++i) out[p.old_of(i)] = in[i];
  return out;
}

}  // namespace schur
