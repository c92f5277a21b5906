#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "schur/cholesky.hpp"
#include "schur/dense.hpp"
#include "schur/flops.hpp"
#include "schur/problem.hpp"
#include "schur/syrk.hpp"
#include "schur/trsm.hpp"

namespace schur {

struct AssemblyConfig {
  TrsmConfig trsm;
  SyrkConfig syrk;
  /// Reorder the columns of B~^T into stepped shape before the kernels.  Off
  /// means the multipliers are processed in their original order.
  bool stepped_order = true;
  /// Also evaluate the dense oracle and report the relative error.
  bool compare_oracle = false;
};

/// Explicit local dual operator F~ = B~ K_reg^{-1} B~^T (full symmetric storage,
/// original multiplier order).
struct ExplicitOperator {
  DenseMatrix f;
  std::vector<Index> lambda_map;
};

struct AssemblyStats {
  FlopCounter trsm;
  FlopCounter syrk;
  double seconds_trsm = 0.0;
  double seconds_syrk = 0.0;
  double seconds_total = 0.0;
  double pivot_uniformity = 0.0;
  std::optional<double> oracle_rel_err;
};

struct AssemblyResult {
  ExplicitOperator op;
  AssemblyStats stats;
};

/// Permute B~^T rows into factor order, reorder its columns into stepped
/// shape, solve Y = L^{-1} B~^T, form Y^T Y and undo the column reordering.
AssemblyResult assemble_explicit(const SubdomainProblem& problem, const CholeskyFactor& factor,
                                 const AssemblyConfig& config);

/// B~ K^{-1} B~^T by dense Cholesky of K and dense solves.  Shares no code
/// with the sparse factorization or the blocked kernels.
DenseMatrix oracle_sc(const CsrMatrix& k, const CsrMatrix& bt);
DenseMatrix oracle_sc(const SubdomainProblem& problem);

struct ApplyResult {
  std::vector<double> q;
  FlopCounter flops;
};

/// q = B~ L^{-T} L^{-1} B~^T lambda, with the fill-reducing permutation applied
/// around the triangular solves.
ApplyResult apply_implicit(const SubdomainProblem& problem, const CholeskyFactor& factor,
                           std::span<const double> lambda);

/// q = F~ lambda.
ApplyResult apply_explicit(const ExplicitOperator& op, std::span<const double> lambda);

/// Times are in any consistent unit.
struct AmortizationInputs {
  double t_assembly_extra = 0.0;  // explicit minus implicit preprocessing
  double t_apply_implicit = 0.0;  // per iteration
  double t_apply_explicit = 0.0;  // per iteration
};

/// Smallest iteration count k with extra + k * explicit < k * implicit;
/// nullopt when the explicit apply saves nothing.
std::optional<std::int64_t> amortization_point(const AmortizationInputs& in);

/// Worker count: SCHUR_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs `task(i)` for i in [0, count) on a bounded pool.  The first exception
/// thrown by any task is rethrown after all workers have stopped.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

/// Factorizes and assembles every subdomain of a decomposition in parallel.
std::vector<CholeskyFactor> factorize_all(std::span<const SubdomainProblem> problems,
                                          OrderingMethod ordering, unsigned workers);
std::vector<AssemblyResult> assemble_all(std::span<const SubdomainProblem> problems,
                                         std::span<const CholeskyFactor> factors,
                                         const AssemblyConfig& config, unsigned workers);

}  // namespace schur
