#include <algorithm>
#include <cmath>
#include <sstream>

#include "schur_bench/bench.hpp"

namespace schur::bench {

std::string VariantSpec::label() const {
  std::string s(to_string(trsm));
  s += '-';
  s += storage ? std::string(to_string(*storage)) : "auto";
  if (trsm == TrsmVariant::FactorSplit) s += pruning ? "-prune" : "-noprune";
  s += ':';
  s += to_string(syrk);
  return s;
}

FactorStorage VariantSpec::storage_for(int dim) const {
  if (storage) return *storage;
  return dim == 3 ? FactorStorage::Dense : FactorStorage::Sparse;
}

AssemblyConfig VariantSpec::config(int dim, const Partition& partition) const {
  AssemblyConfig c;
  c.trsm = {trsm, partition, storage_for(dim), trsm == TrsmVariant::FactorSplit && pruning};
  c.syrk = {syrk, partition};
  return c;
}

VariantSpec parse_variant(const std::string& token) {
  if (token == "baseline") return {TrsmVariant::Baseline, std::nullopt, false, SyrkVariant::Baseline};
  if (token == "optimized") return {TrsmVariant::FactorSplit, std::nullopt, true, SyrkVariant::InputSplit};
  const auto colon = token.find(':');
  if (colon == std::string::npos)
    throw ParameterError("variant '" + token + "' must look like <trsm>[-storage][-prune]:<syrk>");
  VariantSpec v;
  v.syrk = parse_syrk_variant(token.substr(colon + 1));
  std::stringstream left(token.substr(0, colon));
  std::string part;
  std::getline(left, part, '-');
  v.trsm = parse_trsm_variant(part);
  v.pruning = v.trsm == TrsmVariant::FactorSplit;
  while (std::getline(left, part, '-')) {
    if (part == "auto") {
      v.storage.reset();
    } else if (part == "prune" || part == "noprune") {
      if (v.trsm != TrsmVariant::FactorSplit)
        throw ParameterError("pruning only applies to factor_split in '" + token + "'");
      v.pruning = part == "prune";
    } else {
      v.storage = parse_factor_storage(part);
    }
  }
  return v;
}

std::vector<VariantSpec> parse_variants(const std::string& list) {
  std::vector<VariantSpec> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(parse_variant(tok));
  if (out.empty()) throw ParameterError("empty variant list");
  return out;
}

Index elements_for_size(int dim, Index n) {
  if (dim != 2 && dim != 3) throw ParameterError("dimension must be 2 or 3");
  const auto side = static_cast<Index>(std::llround(std::pow(static_cast<double>(n), 1.0 / dim)));
  Index check = 1;
  for (int d = 0; d < dim; ++d) check *= side;
  if (side < 2 || check != n)
    throw ParameterError("subdomain size " + std::to_string(n) + " is not a " +
                         (dim == 2 ? "square" : "cube") + " of a node count >= 2");
  return side - 1;
}

Decomposition representative_decomposition(int dim, Index n, double rho) {
  return generate({dim, elements_for_size(dim, n), 3, rho});
}

const SubdomainProblem& central_subdomain(const Decomposition& d) {
  const std::size_t centre = d.spec.dim == 2 ? 4 : 13;
  if (d.spec.subdomains_per_edge != 3 || d.subdomains.size() <= centre)
    throw ParameterError("central_subdomain expects 3 subdomains per edge");
  return d.subdomains[centre];
}

double median(std::vector<double> v) {
  if (v.empty()) throw ParameterError("median of an empty sample");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

std::uint64_t flop_total(const FlopCounter& f) { return 2 * f.multiply_adds + f.divisions; }

}  // namespace schur::bench
