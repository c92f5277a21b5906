#pragma once

#include <string_view>

#include "schur/csr.hpp"
#include "schur/permutation.hpp"

namespace schur {

enum class OrderingMethod { Natural, Amd, ReverseCuthillMcKee };

OrderingMethod parse_ordering(std::string_view name);
std::string_view to_string(OrderingMethod m);

/// Fill-reducing symmetric ordering of a square, structurally symmetric
/// matrix.  Quality is best effort; the result is always a bijection.
Permutation fill_reducing_order(const CsrMatrix& k, OrderingMethod method = OrderingMethod::Amd);

/// Minimum degree on the quotient graph with approximate external degrees
/// and element absorption.  Ties go to the lowest index, so the result is
/// deterministic.
Permutation approximate_minimum_degree(const CsrMatrix& k);

Permutation reverse_cuthill_mckee(const CsrMatrix& k);

}  // namespace schur
