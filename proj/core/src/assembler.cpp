#include "schur/assembler.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "dense_kernels.hpp"

namespace schur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

AssemblyResult assemble_explicit(const SubdomainProblem& problem, const CholeskyFactor& factor,
                                 const AssemblyConfig& config) {
  if (factor.n() != problem.n()) throw DimensionError("assemble_explicit: factor order differs from problem");
  const auto t_start = Clock::now();
  const Index m = problem.m();

  AssemblyResult out;
  out.op.lambda_map = problem.lambda_map;

  // Rows into factor order (P K P^T = L L^T), then columns into stepped order.
  const CsrMatrix bt_rows = permute_rows(problem.bt, factor.perm());
  const Permutation cols = config.stepped_order ? stepped_permutation(bt_rows) : Permutation::identity(m);
  const CsrMatrix bt_stepped = permute_cols(bt_rows, cols);
  const SteppedProfile profile = compute_profile(bt_stepped);
  out.stats.pivot_uniformity = pivot_uniformity(profile);

  DenseMatrix y = csr_to_dense(bt_stepped);
  auto t0 = Clock::now();
  out.stats.trsm = trsm(factor.l(), y.view(), profile, config.trsm);
  out.stats.seconds_trsm = seconds_since(t0);

  t0 = Clock::now();
  const SteppedProfile y_profile =
      config.syrk.variant == SyrkVariant::Baseline ? SteppedProfile{} : compute_profile(y.view());
  SyrkResult s = syrk(y.view(), y_profile, config.syrk);
  out.stats.syrk = s.flops;
  out.stats.seconds_syrk = seconds_since(t0);

  // F(i, j) = F'(q_i, q_j) with F' lower triangular in stepped order.
  out.op.f = DenseMatrix(m, m);
  const auto inv = cols.inverse();
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j <= i; ++j) {
      const Index a = inv[i], b = inv[j];
      const double v = a >= b ? s.f(a, b) : s.f(b, a);
      out.op.f(i, j) = v;
      out.op.f(j, i) = v;
    }
  out.stats.seconds_total = seconds_since(t_start);

  if (config.compare_oracle) {
    const DenseMatrix ref = oracle_sc(problem);
    out.stats.oracle_rel_err = relative_frobenius_error(out.op.f.view(), ref.view());
  }
  return out;
}

ApplyResult apply_implicit(const SubdomainProblem& problem, const CholeskyFactor& factor,
                           std::span<const double> lambda) {
  if (static_cast<Index>(lambda.size()) != problem.m()) throw DimensionError("apply_implicit: lambda length mismatch");
  if (factor.n() != problem.n()) throw DimensionError("apply_implicit: factor order differs from problem");
  ApplyResult out;
  const CsrMatrix& l = factor.l();
  auto v = spmv(problem.bt, lambda);
  v = permute_vector(factor.perm(), v);
  v = trsv_lower(l, v, Transpose::No);
  v = trsv_lower(l, v, Transpose::Yes);
  v = unpermute_vector(factor.perm(), v);
  out.q = spmv_transposed(problem.bt, v);
  const auto offdiag = static_cast<std::uint64_t>(l.nnz() - l.rows());
  const auto bt_nnz = static_cast<std::uint64_t>(problem.bt.nnz());
  out.flops = {2 * bt_nnz + 2 * offdiag, 2 * static_cast<std::uint64_t>(l.rows())};
  return out;
}

ApplyResult apply_explicit(const ExplicitOperator& op, std::span<const double> lambda) {
  const Index m = op.f.rows();
  if (static_cast<Index>(lambda.size()) != m) throw DimensionError("apply_explicit: lambda length mismatch");
  ApplyResult out;
  out.q.assign(static_cast<std::size_t>(m), 0.0);
  out.flops = detail::dense_gemv(op.f.view(), lambda, out.q);
  return out;
}

std::optional<std::int64_t> amortization_point(const AmortizationInputs& in) {
  const double saving = in.t_apply_implicit - in.t_apply_explicit;
  if (!(saving > 0.0)) return std::nullopt;
  const double extra = std::max(0.0, in.t_assembly_extra);
  // Strict inequality: k * saving > extra.
  auto k = static_cast<std::int64_t>(std::floor(extra / saving)) + 1;
  while (k > 1 && extra + (k - 1) * in.t_apply_explicit < (k - 1) * in.t_apply_implicit) --k;
  while (!(extra + k * in.t_apply_explicit < k * in.t_apply_implicit)) ++k;
  return k;
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SCHUR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return hw;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

std::vector<CholeskyFactor> factorize_all(std::span<const SubdomainProblem> problems,
                                          OrderingMethod ordering, unsigned workers) {
  std::vector<std::optional<CholeskyFactor>> tmp(problems.size());
  parallel_for(problems.size(), workers, [&](std::size_t i) { tmp[i].emplace(factorize(problems[i].k_reg, ordering)); });
  std::vector<CholeskyFactor> out;
  out.reserve(tmp.size());
  for (auto& f : tmp) out.push_back(std::move(*f));
  return out;
}

std::vector<AssemblyResult> assemble_all(std::span<const SubdomainProblem> problems,
                                         std::span<const CholeskyFactor> factors,
                                         const AssemblyConfig& config, unsigned workers) {
  if (problems.size() != factors.size()) throw DimensionError("assemble_all: one factor per problem required");
  std::vector<AssemblyResult> out(problems.size());
  parallel_for(problems.size(), workers,
               [&](std::size_t i) { out[i] = assemble_explicit(problems[i], factors[i], config); });
  return out;
}

}  // namespace schur
