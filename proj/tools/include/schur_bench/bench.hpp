#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "schur/assembler.hpp"
#include "schur/ordering.hpp"

namespace schur::bench {

/// A (TRSM, SYRK) pairing as written on the command line:
///   <trsm>[-sparse|-dense|-auto][-prune|-noprune]:<syrk>
/// plus the shorthands "baseline" and "optimized".  With storage "auto" the
/// factor blocks are sparse in 2D and dense in 3D.
struct VariantSpec {
  TrsmVariant trsm = TrsmVariant::FactorSplit;
  std::optional<FactorStorage> storage;  // nullopt = auto
  bool pruning = true;
  SyrkVariant syrk = SyrkVariant::InputSplit;

  std::string label() const;
  FactorStorage storage_for(int dim) const;
  AssemblyConfig config(int dim, const Partition& partition) const;
  friend bool operator==(const VariantSpec&, const VariantSpec&) = default;
};

VariantSpec parse_variant(const std::string& token);
std::vector<VariantSpec> parse_variants(const std::string& list);

/// Elements per subdomain edge giving exactly n nodes; throws ParameterError
/// when n is not a perfect square (2D) or cube (3D) of at least 2.
Index elements_for_size(int dim, Index n);

/// Decomposition with 3 subdomains per edge; the sweep and amortization
/// tables report its central subdomain, which is glued on every face.
Decomposition representative_decomposition(int dim, Index n, double rho = 1.0);
const SubdomainProblem& central_subdomain(const Decomposition& d);

double median(std::vector<double> v);
std::uint64_t flop_total(const FlopCounter& f);  // 2 per multiply-add + divisions

struct SweepSpec {
  std::vector<int> dims{3};
  std::vector<Index> sizes{2744};
  std::vector<VariantSpec> variants{parse_variant("optimized")};
  std::vector<Partition> partitions{Partition::fixed_size(10),   Partition::fixed_size(50),
                                    Partition::fixed_size(200),  Partition::fixed_size(500),
                                    Partition::fixed_size(2000), Partition::fixed_size(10000)};
  int reps = 3;
  bool check = false;
  bool parallel = false;
  OrderingMethod ordering = OrderingMethod::Amd;

  void validate() const;
};

struct SweepRow {
  int dim = 0;
  Index n = 0;
  Index m = 0;
  std::string variant;
  std::string partition_policy;
  Index partition_value = 0;
  bool pruning = false;
  std::uint64_t flops_trsm = 0;
  std::uint64_t flops_syrk = 0;
  double wall_ms_trsm = 0.0;
  double wall_ms_syrk = 0.0;
  double wall_ms_total = 0.0;
  std::optional<double> oracle_rel_err;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct AmortizationSpec {
  std::vector<int> dims{2, 3};
  std::vector<Index> sizes{1089, 1331};
  std::vector<VariantSpec> variants{parse_variant("baseline"), parse_variant("optimized")};
  Partition partition = Partition::fixed_size(500);
  int reps = 3;
  int applies = 100;
  OrderingMethod ordering = OrderingMethod::Amd;

  void validate() const;
};

struct AmortizationRow {
  int dim = 0;
  Index n = 0;
  std::string variant;
  double t_factor_ms = 0.0;
  double t_assembly_ms = 0.0;
  double t_apply_impl_us = 0.0;
  double t_apply_expl_us = 0.0;
  std::optional<std::int64_t> amortization_iters;  // nullopt prints "inf"
  friend bool operator==(const AmortizationRow&, const AmortizationRow&) = default;
};

/// Sizes that do not match `dims` (n is not a square in 2D or a cube in 3D)
/// are skipped.
std::vector<AmortizationRow> run_amortization(const AmortizationSpec& spec);
void write_amortization_csv(std::ostream& out, const std::vector<AmortizationRow>& rows);
std::vector<AmortizationRow> read_amortization_csv(std::istream& in);

struct CorrectnessOptions {
  std::uint64_t seed = 42;
  bool quick = false;
  bool corrupt_factor = false;  // zero one factor diagonal before assembly
};

struct InvariantResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;
};

struct CorrectnessReport {
  std::vector<InvariantResult> invariants;
  bool passed() const;
};

CorrectnessReport run_correctness(const CorrectnessOptions& options);
void print_report(std::ostream& out, const CorrectnessReport& report);

struct GenOptions {
  DecompositionSpec spec;
  std::filesystem::path out_dir = "problem";
};

/// Writes k_reg_<i>.mtx (symmetric), bt_<i>.mtx and lambda_map_<i>.txt for
/// every subdomain plus a summary.txt; returns the files written.
std::vector<std::filesystem::path> write_problem_files(const GenOptions& options);

}  // namespace schur::bench

namespace schur::bench {

/// Entry point of the schur_bench executable; args[0] is the program name.
/// Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schur::bench
