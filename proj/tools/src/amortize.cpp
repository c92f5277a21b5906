#include <chrono>
#include <ostream>
#include <random>

#include "csv.hpp"
#include "schur_bench/bench.hpp"

namespace schur::bench {

namespace {

const std::string kAmortizationHeader =
    "dim,n,variant,t_factor_ms,t_assembly_ms,t_apply_impl_us,t_apply_expl_us,amortization_iters";

using Clock = std::chrono::steady_clock;

template <class F>
double time_seconds(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

void AmortizationSpec::validate() const {
  if (dims.empty() || sizes.empty() || variants.empty())
    throw ParameterError("amortize: dims, sizes and variants must be non-empty");
  if (reps < 3) throw ParameterError("amortize: at least 3 repetitions are required");
  if (applies < 100) throw ParameterError("amortize: at least 100 applications are required");
  if (partition.value < 1) throw ParameterError("amortize: partition value must be >= 1");
}

std::vector<AmortizationRow> run_amortization(const AmortizationSpec& spec) {
  spec.validate();
  std::vector<AmortizationRow> rows;
  for (int dim : spec.dims) {
    for (Index n : spec.sizes) {
      try {
        elements_for_size(dim, n);
      } catch (const ParameterError&) {
        continue;
      }
      const Decomposition d = representative_decomposition(dim, n);
      const SubdomainProblem& sd = central_subdomain(d);

      std::vector<double> t_factor;
      std::optional<CholeskyFactor> factor;
      for (int r = 0; r < spec.reps; ++r)
        t_factor.push_back(time_seconds([&] { factor = factorize(sd.k_reg, spec.ordering); }));

      // Application cost does not depend on how F~ was assembled.
      const ExplicitOperator op =
          assemble_explicit(sd, *factor, spec.variants.front().config(dim, spec.partition)).op;
      std::mt19937_64 rng(1234);
      std::normal_distribution<double> g;
      std::vector<double> lambda(static_cast<std::size_t>(sd.m()));
      for (auto& v : lambda) v = g(rng);
      std::vector<double> t_impl, t_expl;
      for (int a = 0; a < spec.applies; ++a) {
        t_impl.push_back(time_seconds([&] { apply_implicit(sd, *factor, lambda); }));
        t_expl.push_back(time_seconds([&] { apply_explicit(op, lambda); }));
      }
      const double impl = median(t_impl), expl = median(t_expl);

      // Variants are timed round-robin after one warm-up each, so drift in
      // machine load spreads evenly over them.
      std::vector<AssemblyConfig> configs;
      for (const auto& v : spec.variants) {
        configs.push_back(v.config(dim, spec.partition));
        assemble_explicit(sd, *factor, configs.back());
      }
      std::vector<std::vector<double>> t_asm(configs.size());
      for (int r = 0; r < spec.reps; ++r)
        for (std::size_t i = 0; i < configs.size(); ++i)
          t_asm[i].push_back(time_seconds([&] { assemble_explicit(sd, *factor, configs[i]); }));

      for (std::size_t i = 0; i < configs.size(); ++i) {
        const double assembly = median(t_asm[i]);
        VariantSpec resolved = spec.variants[i];
        resolved.storage = resolved.storage_for(dim);
        rows.push_back({dim, n, resolved.label(), median(t_factor) * 1e3, assembly * 1e3, impl * 1e6, expl * 1e6,
                        amortization_point({assembly, impl, expl})});
      }
    }
  }
  return rows;
}

void write_amortization_csv(std::ostream& out, const std::vector<AmortizationRow>& rows) {
  out << "# extra preprocessing of the explicit operator = assembly time (both approaches factorize)\n"
      << "# apply times are medians over repeated applications on the central subdomain\n"
      << kAmortizationHeader << '\n';
  for (const auto& r : rows) {
    out << r.dim << ',' << r.n << ',' << r.variant << ',' << csv::fmt(r.t_factor_ms) << ','
        << csv::fmt(r.t_assembly_ms) << ',' << csv::fmt(r.t_apply_impl_us) << ',' << csv::fmt(r.t_apply_expl_us)
        << ',' << (r.amortization_iters ? std::to_string(*r.amortization_iters) : std::string("inf")) << '\n';
  }
  if (!out) throw IoError("amortize: failed to write CSV");
}

std::vector<AmortizationRow> read_amortization_csv(std::istream& in) {
  std::vector<AmortizationRow> rows;
  for (const auto& f : csv::read_table(in, kAmortizationHeader)) {
    AmortizationRow r;
    r.dim = csv::parse<int>(f[0], "dim");
    r.n = csv::parse<Index>(f[1], "n");
    r.variant = f[2];
    r.t_factor_ms = csv::parse<double>(f[3], "t_factor_ms");
    r.t_assembly_ms = csv::parse<double>(f[4], "t_assembly_ms");
    r.t_apply_impl_us = csv::parse<double>(f[5], "t_apply_impl_us");
    r.t_apply_expl_us = csv::parse<double>(f[6], "t_apply_expl_us");
    if (f[7] != "inf") r.amortization_iters = csv::parse<std::int64_t>(f[7], "amortization_iters");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace schur::bench
