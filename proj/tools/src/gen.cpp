#include <fstream>

#include "schur/matrix_market.hpp"
#include "schur_bench/bench.hpp"

namespace schur::bench {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  return out;
}

}  // namespace

std::vector<std::filesystem::path> write_problem_files(const GenOptions& options) {
  const Decomposition d = generate(options.spec);
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& sd : d.subdomains) {
    const std::string id = std::to_string(sd.index);
    const auto k_path = options.out_dir / ("k_reg_" + id + ".mtx");
    const auto b_path = options.out_dir / ("bt_" + id + ".mtx");
    const auto l_path = options.out_dir / ("lambda_map_" + id + ".txt");
    mm::write_csr(k_path, sd.k_reg, mm::Symmetry::Symmetric);
    mm::write_csr(b_path, sd.bt, mm::Symmetry::General);
    auto lm = open_out(l_path);
    for (Index g : sd.lambda_map) lm << g << '\n';
    if (!lm) throw IoError("failed writing " + l_path.string());
    written.insert(written.end(), {k_path, b_path, l_path});
  }
  const auto summary = options.out_dir / "summary.txt";
  auto s = open_out(summary);
  s << "dim " << d.spec.dim << "\nelements_per_edge " << d.spec.elements_per_edge << "\nsubdomains_per_edge "
    << d.spec.subdomains_per_edge << "\nrho " << d.spec.regularization_rho << "\nsubdomains " << d.subdomains.size()
    << "\ndofs_per_subdomain " << d.spec.nodes_per_subdomain() << "\ntotal_dofs " << d.total_dofs
    << "\ntotal_multipliers " << d.total_multipliers << '\n';
  if (!s) throw IoError("failed writing " + summary.string());
  written.push_back(summary);
  return written;
}

}  // namespace schur::bench
