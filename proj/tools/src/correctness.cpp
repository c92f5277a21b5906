#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "schur_bench/bench.hpp"

namespace schur::bench {

namespace {

class Tracker {
 public:
  explicit Tracker(std::vector<std::string> names) {
    for (auto& n : names) results_.push_back({std::move(n), 0, 0, {}});
  }

  void record(const std::string& name, bool ok, const std::string& what) {
    InvariantResult& r = find(name);
    ++r.checks;
    if (!ok) {
      if (r.failures == 0) r.first_failure = what;
      ++r.failures;
    }
  }

  CorrectnessReport report() && { return {std::move(results_)}; }

 private:
  InvariantResult& find(const std::string& name) {
    for (auto& r : results_)
      if (r.name == name) return r;
    throw ParameterError("unknown invariant " + name);
  }
  std::vector<InvariantResult> results_;
};

std::vector<AssemblyConfig> all_combinations(Index block) {
  std::vector<AssemblyConfig> out;
  for (auto tv : {TrsmVariant::Baseline, TrsmVariant::RhsSplit, TrsmVariant::FactorSplit})
    for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense})
      for (bool prune : {false, true}) {
        if (prune && tv != TrsmVariant::FactorSplit) continue;
        for (auto sv : {SyrkVariant::Baseline, SyrkVariant::InputSplit, SyrkVariant::OutputSplit}) {
          AssemblyConfig c;
          c.trsm = {tv, Partition::fixed_size(block), storage, prune};
          c.syrk = {sv, Partition::fixed_size(block)};
          out.push_back(c);
        }
      }
  return out;
}

std::string describe(const AssemblyConfig& c) {
  return VariantSpec{c.trsm.variant, c.trsm.storage, c.trsm.pruning, c.syrk.variant}.label() +
         " block " + std::to_string(c.trsm.partition.value);
}

CsrMatrix random_lower(Index n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-0.5, 0.5), coin(0.0, 1.0);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j)
      if (coin(rng) < density) t.push_back({i, j, val(rng)});
    t.push_back({i, i, 1.5 + coin(rng)});
  }
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

DenseMatrix random_stepped(Index n, Index m, double density, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> row(0, n - 1);
  std::uniform_real_distribution<double> val(0.5, 1.5), coin(0.0, 1.0);
  std::vector<Index> pivots(static_cast<std::size_t>(m));
  for (auto& p : pivots) p = row(rng);
  std::sort(pivots.begin(), pivots.end());
  DenseMatrix x(n, m);
  for (Index c = 0; c < m; ++c) {
    x(pivots[c], c) = val(rng);
    for (Index r = pivots[c] + 1; r < n; ++r)
      if (coin(rng) < density) x(r, c) = val(rng) - 1.0;
  }
  return x;
}

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

void check_generated(Tracker& t, const CorrectnessOptions& opt, std::mt19937_64& rng) {
  const std::vector<std::pair<int, Index>> sizes =
      opt.quick ? std::vector<std::pair<int, Index>>{{2, 49}, {3, 64}}
                : std::vector<std::pair<int, Index>>{{2, 49}, {2, 81}, {2, 289}, {2, 1089},
                                                     {3, 64}, {3, 343}, {3, 1331}};
  const int lambdas = opt.quick ? 10 : 100;
  bool corrupted = false;
  for (const auto& [dim, n] : sizes) {
    const std::string where = std::to_string(dim) + "D n=" + std::to_string(n);
    const Decomposition d = representative_decomposition(dim, n);
    const SubdomainProblem& sd = central_subdomain(d);
    CholeskyFactor f = factorize(sd.k_reg);
    t.record("factorization_residual", factorization_residual(sd.k_reg, f) < 1e-12, where);
    if (opt.corrupt_factor && !corrupted) {
      f.overwrite_diagonal_for_testing(0, 0.0);
      corrupted = true;
    }
    const DenseMatrix ref = oracle_sc(sd);
    std::uniform_int_distribution<Index> block(4, 64);
    const Index b = block(rng);
    std::optional<ExplicitOperator> op;
    for (const auto& cfg : all_combinations(b)) {
      try {
        AssemblyResult r = assemble_explicit(sd, f, cfg);
        const double err = relative_frobenius_error(r.op.f.view(), ref.view());
        t.record("oracle_equivalence", err < 1e-10, where + " " + describe(cfg) + " err " + sci(err));
        if (!op) op = std::move(r.op);
      } catch (const std::exception& e) {
        t.record("oracle_equivalence", false, where + " " + describe(cfg) + ": " + e.what());
      }
    }
    std::normal_distribution<double> g;
    for (int k = 0; k < lambdas; ++k) {
      std::vector<double> lambda(static_cast<std::size_t>(sd.m()));
      for (auto& v : lambda) v = g(rng);
      try {
        if (!op) throw ConsistencyError("no explicit operator");
        const double err = inf_norm_diff(apply_implicit(sd, f, lambda).q, apply_explicit(*op, lambda).q);
        t.record("implicit_explicit_agreement", err < 1e-10, where + " err " + sci(err));
      } catch (const std::exception& e) {
        t.record("implicit_explicit_agreement", false, where + ": " + e.what());
      }
    }
  }
}

void check_random(Tracker& t, const CorrectnessOptions& opt, std::mt19937_64& rng) {
  const int instances = opt.quick ? 20 : 100;
  std::uniform_int_distribution<Index> rows(10, 80), cols(1, 40), block(1, 16);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  for (int i = 0; i < instances; ++i) {
    const Index n = rows(rng), m = cols(rng), bs = block(rng);
    const CsrMatrix l = random_lower(n, density(rng), rng);
    const DenseMatrix x0 = random_stepped(n, m, density(rng), rng);
    const SteppedProfile prof = compute_profile(x0.view());
    const std::string where = "instance " + std::to_string(i);
    DenseMatrix ref = copy_of(x0.view());
    trsm_baseline(l, ref.view(), FactorStorage::Dense);

    for (auto tv : {TrsmVariant::Baseline, TrsmVariant::RhsSplit, TrsmVariant::FactorSplit})
      for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense})
        for (bool prune : {false, true}) {
          if (prune && tv != TrsmVariant::FactorSplit) continue;
          DenseMatrix x = copy_of(x0.view());
          trsm(l, x.view(), prof, {tv, Partition::fixed_size(bs), storage, prune});
          bool zeros = true;
          for (Index c = 0; c < m; ++c)
            for (Index r = 0; r < prof.col_pivots[c]; ++r) zeros &= x(r, c) == 0.0;
          const std::string tag = where + " " + std::string(to_string(tv)) + "-" + std::string(to_string(storage));
          t.record("zero_preservation", zeros, tag);
          const double err = relative_frobenius_error(x.view(), ref.view());
          t.record("trsm_variant_equivalence", err < 1e-13, tag + " err " + sci(err));
        }

    const SteppedProfile yprof = compute_profile(ref.view());
    const SyrkResult base = syrk_baseline(ref.view());
    for (auto sv : {SyrkVariant::InputSplit, SyrkVariant::OutputSplit}) {
      const SyrkResult r = syrk(ref.view(), yprof, {sv, Partition::fixed_size(bs)});
      const double err = relative_frobenius_error(r.f.view(), base.f.view());
      t.record("syrk_variant_equivalence", err < 1e-13, where + " " + std::string(to_string(sv)) + " err " + sci(err));
    }
  }
}

void check_work_ratio(Tracker& t, const CorrectnessOptions& opt) {
  const Index n = opt.quick ? 256 : 512, block = 8;
  DenseMatrix x(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c <= r; ++c) x(r, c) = 1.0;
  std::vector<Triplet> lt;
  for (Index i = 0; i < n; ++i) lt.push_back({i, i, 1.0});
  const CsrMatrix l = CsrMatrix::from_triplets(n, n, lt);
  const SteppedProfile prof = compute_profile(x.view());
  DenseMatrix a = copy_of(x.view()), b = copy_of(x.view());
  const auto base = trsm_baseline(l, a.view(), FactorStorage::Dense);
  const auto split = trsm_rhs_split(l, b.view(), prof, Partition::fixed_size(block), FactorStorage::Dense);
  const double tr = static_cast<double>(base.multiply_adds) / static_cast<double>(split.multiply_adds);
  t.record("work_ratio", tr >= 2.7, "trsm ratio " + std::to_string(tr));
  const auto sb = syrk_baseline(x.view()).flops;
  const auto si = syrk_input_split(x.view(), prof, Partition::fixed_size(block)).flops;
  const double sr = static_cast<double>(sb.multiply_adds) / static_cast<double>(si.multiply_adds);
  t.record("work_ratio", sr >= 2.7, "syrk ratio " + std::to_string(sr));
}

}  // namespace

bool CorrectnessReport::passed() const {
  return !invariants.empty() &&
         std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.failures == 0 && r.checks > 0; });
}

CorrectnessReport run_correctness(const CorrectnessOptions& options) {
  Tracker t({"factorization_residual", "oracle_equivalence", "implicit_explicit_agreement", "zero_preservation",
             "trsm_variant_equivalence", "syrk_variant_equivalence", "work_ratio"});
  std::mt19937_64 rng(options.seed);
  check_generated(t, options, rng);
  check_random(t, options, rng);
  check_work_ratio(t, options);
  return std::move(t).report();
}

void print_report(std::ostream& out, const CorrectnessReport& report) {
  for (const auto& r : report.invariants) {
    out << std::left << std::setw(30) << r.name << " checks " << std::setw(6) << r.checks << " failures "
        << std::setw(6) << r.failures << ' ' << (r.failures == 0 && r.checks > 0 ? "PASS" : "FAIL") << '\n';
    if (r.failures > 0) out << "  first failure: " << r.first_failure << '\n';
  }
  out << (report.passed() ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
}

}  // namespace schur::bench
