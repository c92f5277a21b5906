#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "schur/cholesky.hpp"
#include "schur/problem.hpp"
#include "schur/trsm.hpp"

using namespace schur;

namespace {

struct Case {
  CsrMatrix l;
  DenseMatrix x;
};

// Factor and stepped dense RHS of one generated subdomain.
Case subdomain_case(int dim, Index e) {
  const auto d = generate({dim, e, 2, 1.0});
  const auto& sd = d.subdomains[0];
  const CholeskyFactor f = factorize(sd.k_reg);
  CsrMatrix bt = permute_rows(sd.bt, f.perm());
  bt = permute_cols(bt, stepped_permutation(bt));
  return {f.l(), csr_to_dense(bt)};
}

std::vector<TrsmConfig> all_configs(Index block) {
  std::vector<TrsmConfig> out;
  for (auto s : {FactorStorage::Sparse, FactorStorage::Dense}) {
    out.push_back({TrsmVariant::Baseline, Partition::fixed_size(block), s, false});
    out.push_back({TrsmVariant::RhsSplit, Partition::fixed_size(block), s, false});
    out.push_back({TrsmVariant::FactorSplit, Partition::fixed_size(block), s, false});
    out.push_back({TrsmVariant::FactorSplit, Partition::fixed_size(block), s, true});
  }
  return out;
}

}  // namespace

TEST_CASE("trsm_baseline: hand cases", "[trsm]") {
  for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense}) {
    const auto eye = CsrMatrix::from_triplets(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
    DenseMatrix x{{1, 2}, {3, 4}, {5, 6}};
    const DenseMatrix before = copy_of(x.view());
    trsm_baseline(eye, x.view(), storage);
    CHECK(relative_frobenius_error(x.view(), before.view()) == 0.0);

    const auto l = CsrMatrix::from_triplets(2, 2, {{0, 0, 2}, {1, 0, 1}, {1, 1, 1}});
    DenseMatrix y{{4, 8}, {3, 5}};
    trsm_baseline(l, y.view(), storage);
    const DenseMatrix expect{{2, 4}, {1, 1}};
    CHECK(relative_frobenius_error(y.view(), expect.view()) == 0.0);
  }
}

TEST_CASE("trsm_baseline: dense solve oracle", "[trsm]") {
  std::mt19937_64 rng(50);
  const CholeskyFactor f = factorize(testing::random_spd(50, 0.1, rng));
  const DenseMatrix x0 = csr_to_dense(testing::random_sparse(50, 7, 0.5, rng));
  const DenseMatrix ref = testing::lu_solve(csr_to_dense(f.l()).view(), x0.view());
  for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense}) {
    DenseMatrix x = copy_of(x0.view());
    trsm_baseline(f.l(), x.view(), storage);
    CHECK(relative_frobenius_error(x.view(), ref.view()) < 1e-12);
  }
}

TEST_CASE("trsm: singular and malformed factors", "[trsm]") {
  const auto zero_diag = CsrMatrix::from_triplets(2, 2, {{0, 0, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto missing = CsrMatrix::from_triplets(2, 2, {{0, 0, 1}, {1, 0, 1}});
  DenseMatrix x{{1}, {1}};
  const DenseMatrix before = copy_of(x.view());
  const auto prof = compute_profile(x.view());
  for (const auto* l : {&zero_diag, &missing}) {
    for (const auto& cfg : all_configs(1)) {
      CHECK_THROWS_AS(trsm(*l, x.view(), prof, cfg), SingularError);
      CHECK(relative_frobenius_error(x.view(), before.view()) == 0.0);
    }
  }
  DenseMatrix wrong(3, 1);
  const auto eye = CsrMatrix::from_triplets(2, 2, {{0, 0, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(trsm_baseline(eye, wrong.view(), FactorStorage::Sparse), DimensionError);
  auto bad = prof;
  bad.col_pivots[0] = 1;
  CHECK_THROWS_AS(trsm_rhs_split(eye, x.view(), bad, Partition::fixed_size(1)), ConsistencyError);
}

TEST_CASE("trsm_rhs_split", "[trsm]") {
  SECTION("one block solves from the global min pivot") {
    std::mt19937_64 rng(7);
    const CsrMatrix l = testing::random_lower_factor(40, 0.2, rng);
    std::vector<Index> piv;
    const DenseMatrix x0 = testing::random_stepped(40, 6, 0.5, rng, &piv);
    DenseMatrix a = copy_of(x0.view()), b = copy_of(x0.view());
    const auto prof = compute_profile(x0.view());
    const auto fs = trsm_rhs_split(l, a.view(), prof, Partition::fixed_count(1), FactorStorage::Sparse);
    const Index r = piv.front();
    DenseMatrix tail = copy_of(x0.view().block(r, 0, 40 - r, 6));
    const auto ft = trsm_baseline(extract_sub_csr(l, r, 40, r, 40), tail.view(), FactorStorage::Sparse);
    CHECK(fs == ft);
    trsm_baseline(l, b.view(), FactorStorage::Sparse);
    CHECK(relative_frobenius_error(a.view(), b.view()) < 1e-13);
  }
  SECTION("two pivot groups: second block solves half the system") {
    const Index n = 64, m = 8;
    std::mt19937_64 rng(8);
    const CsrMatrix l = testing::random_lower_factor(n, 1.0, rng);
    DenseMatrix x(n, m);
    for (Index c = 0; c < m; ++c)
      for (Index r = (c < m / 2 ? 0 : n / 2); r < n; ++r) x(r, c) = 1.0;
    const auto prof = compute_profile(x.view());
    DenseMatrix a = copy_of(x.view()), b = copy_of(x.view());
    const auto split = trsm_rhs_split(l, a.view(), prof, Partition::fixed_count(2), FactorStorage::Dense);
    const auto base = trsm_baseline(l, b.view(), FactorStorage::Dense);
    // Analytic triangular-solve counts: w * k (k - 1) / 2 for order k.
    const auto tri = [](Index w, Index k) { return static_cast<std::uint64_t>(w * k * (k - 1) / 2); };
    CHECK(base.multiply_adds == tri(m, n));
    CHECK(split.multiply_adds == tri(m / 2, n) + tri(m / 2, n / 2));
    CHECK(split.multiply_adds < base.multiply_adds);
    CHECK(relative_frobenius_error(a.view(), b.view()) < 1e-13);
  }
  SECTION("generated 3D subdomain") {
    const Case c = subdomain_case(3, 6);
    REQUIRE(c.l.rows() == 343);
    DenseMatrix a = copy_of(c.x.view()), b = copy_of(c.x.view());
    const auto prof = compute_profile(c.x.view());
    const auto fs = trsm_rhs_split(c.l, a.view(), prof, Partition::fixed_size(16), FactorStorage::Sparse);
    const auto fb = trsm_baseline(c.l, b.view(), FactorStorage::Sparse);
    CHECK(relative_frobenius_error(a.view(), b.view()) < 1e-13);
    CHECK(fs.multiply_adds <= fb.multiply_adds);
  }
}

TEST_CASE("trsm_factor_split", "[trsm]") {
  SECTION("hand block elimination") {
    const auto l = CsrMatrix::from_triplets(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 0, 1}, {2, 1, 1}, {2, 2, 1}});
    for (bool prune : {false, true})
      for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense}) {
        DenseMatrix x{{1}, {1}, {0}};
        trsm_factor_split(l, x.view(), compute_profile(x.view()), Partition::fixed_size(2), storage, prune);
        const DenseMatrix expect{{1}, {1}, {-2}};
        CHECK(relative_frobenius_error(x.view(), expect.view()) == 0.0);
      }
  }
  SECTION("one block equals baseline") {
    std::mt19937_64 rng(9);
    const CsrMatrix l = testing::random_lower_factor(30, 0.3, rng);
    const DenseMatrix x0 = testing::random_stepped(30, 5, 0.7, rng);
    DenseMatrix a = copy_of(x0.view());
    const auto fs = trsm_factor_split(l, a.view(), compute_profile(x0.view()), Partition::fixed_count(1),
                                      FactorStorage::Dense, true);
    // Dense X: the single block already spans every column.
    DenseMatrix full(30, 5);
    full.fill(1.0);
    DenseMatrix b = copy_of(full.view()), c = copy_of(full.view());
    const auto f1 = trsm_factor_split(l, b.view(), compute_profile(full.view()), Partition::fixed_count(1),
                                      FactorStorage::Dense, true);
    const auto f2 = trsm_baseline(l, c.view(), FactorStorage::Dense);
    CHECK(f1 == f2);
    CHECK(relative_frobenius_error(b.view(), c.view()) == 0.0);
    DenseMatrix ref = copy_of(x0.view());
    trsm_baseline(l, ref.view(), FactorStorage::Dense);
    CHECK(relative_frobenius_error(a.view(), ref.view()) < 1e-13);
    CHECK(fs.multiply_adds <= f2.multiply_adds);
  }
  SECTION("pruning on a 3D subdomain") {
    const Case c = subdomain_case(3, 10);
    REQUIRE(c.l.rows() == 1331);
    const auto prof = compute_profile(c.x.view());
    for (auto storage : {FactorStorage::Sparse, FactorStorage::Dense}) {
      DenseMatrix a = copy_of(c.x.view()), b = copy_of(c.x.view());
      const auto on = trsm_factor_split(c.l, a.view(), prof, Partition::fixed_size(100), storage, true);
      const auto off = trsm_factor_split(c.l, b.view(), prof, Partition::fixed_size(100), storage, false);
      CHECK(relative_frobenius_error(a.view(), b.view()) < 1e-13);
      CHECK(on.multiply_adds <= off.multiply_adds);
    }
  }
}

TEST_CASE("trsm_width_schedule", "[trsm]") {
  SECTION("dense X") {
    DenseMatrix x(10, 4);
    x.fill(1.0);
    const auto b = block_boundaries(10, Partition::fixed_size(3));
    CHECK(trsm_width_schedule(compute_profile(x.view()), b) == std::vector<Index>{4, 4, 4, 4});
  }
  SECTION("triangular profile") {
    DenseMatrix x(12, 12);
    for (Index r = 0; r < 12; ++r)
      for (Index c = 0; c <= r; ++c) x(r, c) = 1.0;
    const auto b = block_boundaries(12, Partition::fixed_size(4));
    CHECK(trsm_width_schedule(compute_profile(x.view()), b) == std::vector<Index>{4, 8, 12});
  }
  SECTION("random stepped X: non-decreasing") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
      const DenseMatrix x = testing::random_stepped(40, 15, 0.1, rng);
      const auto w = trsm_width_schedule(compute_profile(x.view()), block_boundaries(40, Partition::fixed_size(7)));
      CHECK(std::is_sorted(w.begin(), w.end()));
    }
  }
}

TEST_CASE("trsm: zero preservation and variant equivalence", "[trsm]") {
  std::vector<Case> cases{subdomain_case(2, 8), subdomain_case(3, 4)};
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) cases.push_back({testing::random_lower_factor(60, 0.15, rng), testing::random_stepped(60, 20, 0.2, rng)});
  for (const auto& c : cases) {
    const auto prof = compute_profile(c.x.view());
    DenseMatrix ref = copy_of(c.x.view());
    const auto base = trsm_baseline(c.l, ref.view(), FactorStorage::Dense);
    for (Index block : {1, 5, 32}) {
      for (const auto& cfg : all_configs(block)) {
        DenseMatrix x = copy_of(c.x.view());
        const auto flops = trsm(c.l, x.view(), prof, cfg);
        CHECK(relative_frobenius_error(x.view(), ref.view()) < 1e-13);
        if (cfg.storage == FactorStorage::Dense) CHECK(flops.multiply_adds <= base.multiply_adds);
        bool zeros_kept = true;
        for (Index col = 0; col < x.cols(); ++col)
          for (Index r = 0; r < std::min(prof.col_pivots[col], x.rows()); ++r) zeros_kept &= x(r, col) == 0.0;
        CHECK(zeros_kept);
      }
    }
  }
}

TEST_CASE("trsm: variant names", "[trsm]") {
  for (auto v : {TrsmVariant::Baseline, TrsmVariant::RhsSplit, TrsmVariant::FactorSplit})
    CHECK(parse_trsm_variant(to_string(v)) == v);
  for (auto s : {FactorStorage::Sparse, FactorStorage::Dense}) CHECK(parse_factor_storage(to_string(s)) == s);
  CHECK_THROWS_AS(parse_trsm_variant("fast"), ParameterError);
}
