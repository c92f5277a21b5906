#pragma once

#include <cstdint>

namespace schur {

// One fused multiply-add counts as one multiply_add; divisions are kept apart.
struct FlopCounter {
  std::uint64_t multiply_adds = 0;
  std::uint64_t divisions = 0;

  FlopCounter& operator+=(const FlopCounter& o) {
    multiply_adds += o.multiply_adds;
    divisions += o.divisions;
    return *this;
  }
  friend FlopCounter operator+(FlopCounter a, const FlopCounter& b) { return a += b; }
  friend bool operator==(const FlopCounter&, const FlopCounter&) = default;
};

}  // namespace schur
