#include <ostream>

#include "csv.hpp"
#include "schur_bench/bench.hpp"

namespace schur::bench {

namespace {

const std::string kSweepHeader =
    "dim,n,m,variant,partition_policy,partition_value,pruning,flops_trsm,flops_syrk,"
    "wall_ms_trsm,wall_ms_syrk,wall_ms_total,oracle_rel_err";

bool size_matches(int dim, Index n) {
  try {
    elements_for_size(dim, n);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

}  // namespace

void SweepSpec::validate() const {
  if (dims.empty() || sizes.empty() || variants.empty() || partitions.empty())
    throw ParameterError("sweep: dims, sizes, variants and partitions must be non-empty");
  if (reps < 3) throw ParameterError("sweep: at least 3 repetitions are required");
  for (int d : dims)
    if (d != 2 && d != 3) throw ParameterError("sweep: dimension must be 2 or 3");
  for (const auto& p : partitions)
    if (p.value < 1) throw ParameterError("sweep: partition values must be >= 1");
  bool any = false;
  for (int d : dims)
    for (Index n : sizes) any |= size_matches(d, n);
  if (!any) throw ParameterError("sweep: no size is a valid node count for the requested dimensions");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (int dim : spec.dims) {
    for (Index n : spec.sizes) {
      if (!size_matches(dim, n)) continue;
      const Decomposition d = representative_decomposition(dim, n);
      const SubdomainProblem& sd = central_subdomain(d);
      const CholeskyFactor factor = factorize(sd.k_reg, spec.ordering);
      DenseMatrix ref;
      if (spec.check) ref = oracle_sc(sd);

      struct Cell {
        const VariantSpec* variant;
        const Partition* partition;
      };
      std::vector<Cell> cells;
      for (const auto& v : spec.variants)
        for (const auto& p : spec.partitions) cells.push_back({&v, &p});
      std::vector<SweepRow> block(cells.size());

      parallel_for(cells.size(), spec.parallel ? worker_count() : 1, [&](std::size_t i) {
        const VariantSpec& v = *cells[i].variant;
        const AssemblyConfig cfg = v.config(dim, *cells[i].partition);
        VariantSpec resolved = v;
        resolved.storage = v.storage_for(dim);
        std::vector<double> t_trsm, t_syrk, t_total;
        SweepRow row;
        row.dim = dim;
        row.n = n;
        row.m = sd.m();
        row.variant = resolved.label();
        row.partition_policy = cells[i].partition->policy_name();
        row.partition_value = cells[i].partition->value;
        row.pruning = cfg.trsm.pruning;
        for (int r = 0; r < spec.reps; ++r) {
          const AssemblyResult res = assemble_explicit(sd, factor, cfg);
          t_trsm.push_back(res.stats.seconds_trsm * 1e3);
          t_syrk.push_back(res.stats.seconds_syrk * 1e3);
          t_total.push_back(res.stats.seconds_total * 1e3);
          if (r == 0) {
            row.flops_trsm = flop_total(res.stats.trsm);
            row.flops_syrk = flop_total(res.stats.syrk);
            if (spec.check) row.oracle_rel_err = relative_frobenius_error(res.op.f.view(), ref.view());
          }
        }
        row.wall_ms_trsm = median(t_trsm);
        row.wall_ms_syrk = median(t_syrk);
        row.wall_ms_total = median(t_total);
        block[i] = std::move(row);
      });
      for (auto& r : block) rows.push_back(std::move(r));
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# explicit local dual operator assembly, central subdomain of a 3-per-edge decomposition\n"
      << "# flops = 2 * multiply-adds + divisions; wall times are medians over repetitions of one\n"
      << "# subdomain and do not model overlap between concurrently processed subdomains\n"
      << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << r.dim << ',' << r.n << ',' << r.m << ',' << r.variant << ',' << r.partition_policy << ','
        << r.partition_value << ',' << (r.pruning ? 1 : 0) << ',' << r.flops_trsm << ',' << r.flops_syrk << ','
        << csv::fmt(r.wall_ms_trsm) << ',' << csv::fmt(r.wall_ms_syrk) << ',' << csv::fmt(r.wall_ms_total) << ','
        << (r.oracle_rel_err ? csv::fmt(*r.oracle_rel_err) : std::string()) << '\n';
  }
  if (!out) throw IoError("sweep: failed to write CSV");
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  for (const auto& f : csv::read_table(in, kSweepHeader)) {
    SweepRow r;
    r.dim = csv::parse<int>(f[0], "dim");
    r.n = csv::parse<Index>(f[1], "n");
    r.m = csv::parse<Index>(f[2], "m");
    r.variant = f[3];
    r.partition_policy = f[4];
    r.partition_value = csv::parse<Index>(f[5], "partition_value");
    r.pruning = csv::parse<int>(f[6], "pruning") != 0;
    r.flops_trsm = csv::parse<std::uint64_t>(f[7], "flops_trsm");
    r.flops_syrk = csv::parse<std::uint64_t>(f[8], "flops_syrk");
    r.wall_ms_trsm = csv::parse<double>(f[9], "wall_ms_trsm");
    r.wall_ms_syrk = csv::parse<double>(f[10], "wall_ms_syrk");
    r.wall_ms_total = csv::parse<double>(f[11], "wall_ms_total");
    if (!f[12].empty()) r.oracle_rel_err = csv::parse<double>(f[12], "oracle_rel_err");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace schur::bench
