#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "schur_bench/bench.hpp"

namespace schur::bench {

namespace {

std::vector<Partition> partitions_from(const std::vector<Index>& sizes, const std::vector<Index>& counts) {
  std::vector<Partition> out;
  for (Index s : sizes) out.push_back(Partition::fixed_size(s));
  for (Index c : counts) out.push_back(Partition::fixed_count(c));
  return out;
}

template <class F>
void with_output(const std::string& path, std::ostream& stdout_stream, F&& write) {
  if (path == "-") {
    write(stdout_stream);
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write(f);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit local dual operator assembly: problem generation, checks and benchmarks", "schur_bench"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write the subdomain matrices of a decomposition as Matrix Market files");
  gen_cmd->add_option("--dim", gen.spec.dim, "Spatial dimension (2 or 3)")->capture_default_str();
  gen_cmd->add_option("--elements", gen.spec.elements_per_edge, "Elements per subdomain edge")->capture_default_str();
  gen_cmd->add_option("--subdomains", gen.spec.subdomains_per_edge, "Subdomains per edge")->capture_default_str();
  gen_cmd->add_option("--rho", gen.spec.regularization_rho, "Regularization factor")->capture_default_str();
  std::string out_dir = gen.out_dir.string();
  gen_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

  CorrectnessOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run the invariant suite on seeded problems");
  check_cmd->add_option("--seed", check.seed, "Random seed")->capture_default_str();
  check_cmd->add_flag("--quick", check.quick, "Smaller problem set");
  check_cmd->add_flag("--corrupt-factor", check.corrupt_factor, "Zero a factor diagonal (negative test)");

  SweepSpec sweep;
  std::string sweep_variants = "optimized", sweep_out = "-", sweep_ordering = "amd";
  std::vector<Index> block_sizes{10, 50, 200, 500, 2000, 10000}, block_counts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Assembly FLOPs and wall time over variants and partitions");
  sweep_cmd->add_option("--dim", sweep.dims, "Dimensions")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--sizes", sweep.sizes, "Subdomain DOF counts")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--variants", sweep_variants, "Comma-separated <trsm>[-storage][-prune]:<syrk> list")
      ->capture_default_str();
  sweep_cmd->add_option("--block-sizes", block_sizes, "Fixed block sizes")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--block-counts", block_counts, "Fixed block counts")->delimiter(',');
  sweep_cmd->add_option("--reps", sweep.reps, "Repetitions per cell (median reported)")->capture_default_str();
  sweep_cmd->add_flag("--check", sweep.check, "Compare every cell against the dense oracle");
  sweep_cmd->add_flag("--parallel", sweep.parallel, "Run cells concurrently (timings become unreliable)");
  sweep_cmd->add_option("--ordering", sweep_ordering, "natural, amd or rcm")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path, - for stdout")->capture_default_str();

  AmortizationSpec amort;
  std::string amort_variants = "baseline,optimized", amort_out = "-", amort_ordering = "amd";
  Index amort_block = amort.partition.value;
  auto* amort_cmd = app.add_subcommand("amortize", "Iterations needed before explicit assembly pays off");
  amort_cmd->add_option("--dim", amort.dims, "Dimensions")->delimiter(',')->capture_default_str();
  amort_cmd->add_option("--sizes", amort.sizes, "Subdomain DOF counts")->delimiter(',')->capture_default_str();
  amort_cmd->add_option("--variants", amort_variants, "Comma-separated variant list")->capture_default_str();
  amort_cmd->add_option("--block-size", amort_block, "Fixed block size")->capture_default_str();
  amort_cmd->add_option("--reps", amort.reps, "Assembly and factorization repetitions")->capture_default_str();
  amort_cmd->add_option("--applies", amort.applies, "Operator applications timed")->capture_default_str();
  amort_cmd->add_option("--ordering", amort_ordering, "natural, amd or rcm")->capture_default_str();
  amort_cmd->add_option("--out", amort_out, "CSV output path, - for stdout")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) {
      gen.out_dir = out_dir;
      const auto files = write_problem_files(gen);
      out << "wrote " << files.size() << " files to " << gen.out_dir.string() << '\n';
      return 0;
    }
    if (*check_cmd) {
      const CorrectnessReport report = run_correctness(check);
      print_report(out, report);
      return report.passed() ? 0 : 1;
    }
    if (*sweep_cmd) {
      sweep.variants = parse_variants(sweep_variants);
      sweep.partitions = partitions_from(block_sizes, block_counts);
      sweep.ordering = parse_ordering(sweep_ordering);
      const auto rows = run_sweep(sweep);
      with_output(sweep_out, out, [&](std::ostream& o) { write_sweep_csv(o, rows); });
      if (sweep.check)
        for (const auto& r : rows)
          if (!r.oracle_rel_err || *r.oracle_rel_err >= 1e-10) {
            err << "oracle check failed for " << r.variant << " block " << r.partition_value << '\n';
            return 1;
          }
      return 0;
    }
    if (*amort_cmd) {
      amort.variants = parse_variants(amort_variants);
      amort.partition = Partition::fixed_size(amort_block);
      amort.ordering = parse_ordering(amort_ordering);
      const auto rows = run_amortization(amort);
      with_output(amort_out, out, [&](std::ostream& o) { write_amortization_csv(o, rows); });
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace schur::bench
