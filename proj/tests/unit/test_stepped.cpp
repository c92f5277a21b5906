#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "schur/problem.hpp"
#include "schur/stepped.hpp"

using namespace schur;

namespace {

// Pivots recomputed by scanning a dense copy column by column.
std::vector<Index> dense_pivots(const CsrMatrix& m) {
  const DenseMatrix d = csr_to_dense(m);
  std::vector<Index> p(static_cast<std::size_t>(d.cols()), d.rows());
  for (Index c = 0; c < d.cols(); ++c)
    for (Index r = 0; r < d.rows(); ++r)
      if (d(r, c) != 0.0) {
        p[c] = r;
        break;
      }
  return p;
}

}  // namespace

TEST_CASE("stepped_permutation: hand sort and idempotence", "[stepped]") {
  // Column pivots 3, 0, 2.
  const auto bt = CsrMatrix::from_triplets(4, 3, {{3, 0, 1}, {0, 1, 1}, {2, 2, -1}});
  const Permutation p = stepped_permutation(bt);
  // new column order is [1, 2, 0]
  CHECK(p.old_of(0) == 1);
  CHECK(p.old_of(1) == 2);
  CHECK(p.old_of(2) == 0);
  const CsrMatrix permuted = permute_cols(bt, p);
  CHECK(stepped_permutation(permuted).is_identity());
}

TEST_CASE("stepped_permutation: ties keep original order, empty columns last", "[stepped]") {
  const auto bt = CsrMatrix::from_triplets(3, 4, {{1, 0, 1}, {1, 2, 1}, {0, 3, 1}});
  const Permutation p = stepped_permutation(bt);
  CHECK(p.old_of(0) == 3);
  CHECK(p.old_of(1) == 0);
  CHECK(p.old_of(2) == 2);
  CHECK(p.old_of(3) == 1);
}

TEST_CASE("compute_profile", "[stepped]") {
  SECTION("identity") {
    const DenseMatrix i3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto p = compute_profile(i3.view());
    CHECK(p.col_pivots == std::vector<Index>{0, 1, 2});
    CHECK(p.row_trails == std::vector<Index>{0, 1, 2});
  }
  SECTION("empty column sentinel") {
    const DenseMatrix m{{1, 0, 0}, {0, 0, 1}, {1, 0, 1}};
    const auto p = compute_profile(m.view());
    CHECK(p.col_pivots[1] == 3);
    const DenseMatrix z(2, 2);
    CHECK(compute_profile(z.view()).row_trails == std::vector<Index>{-1, -1});
  }
  SECTION("dense lower triangle") {
    DenseMatrix t(4, 4);
    for (Index r = 0; r < 4; ++r)
      for (Index c = 0; c <= r; ++c) t(r, c) = 1.0 + static_cast<double>(r + c);
    const auto p = compute_profile(t.view());
    CHECK(p.col_pivots == std::vector<Index>{0, 1, 2, 3});
    CHECK(p.row_trails == std::vector<Index>{0, 1, 2, 3});
    CHECK(p.pivots_sorted());
  }
  SECTION("sparse and dense agree; exact zero test") {
    std::mt19937_64 rng(3);
    const CsrMatrix a = testing::random_sparse(17, 9, 0.2, rng);
    CHECK(compute_profile(a) == compute_profile(csr_to_dense(a).view()));
    DenseMatrix tiny(2, 1);
    tiny(1, 0) = 1e-300;
    CHECK(compute_profile(tiny.view()).col_pivots[0] == 1);
  }
  SECTION("check_profile rejects a mismatch") {
    const DenseMatrix m{{1, 0}, {1, 1}};
    auto p = compute_profile(m.view());
    CHECK_NOTHROW(check_profile(p, m.view()));
    p.col_pivots[1] = 0;
    CHECK_THROWS_AS(check_profile(p, m.view()), ConsistencyError);
  }
}

TEST_CASE("stepped properties on generated and random matrices", "[stepped]") {
  std::vector<CsrMatrix> mats;
  for (const auto& sd : generate({2, 4, 2, 1.0}).subdomains) mats.push_back(sd.bt);
  for (const auto& sd : generate({3, 3, 2, 1.0}).subdomains) mats.push_back(sd.bt);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) mats.push_back(testing::random_sparse(30, 12, 0.1, rng));
  for (const auto& bt : mats) {
    const Permutation p = stepped_permutation(bt);
    const CsrMatrix s = permute_cols(bt, p);
    const auto piv = dense_pivots(s);
    CHECK(std::is_sorted(piv.begin(), piv.end()));
    CHECK(compute_profile(s).col_pivots == piv);
    auto orig = dense_pivots(bt);
    std::sort(orig.begin(), orig.end());
    CHECK(piv == orig);
    CHECK(stepped_permutation(s).is_identity());
  }
}

TEST_CASE("closed_row_trails and uniformity", "[stepped]") {
  SteppedProfile p{5, 3, {0, 2, 2}, {0, 0, 2, 2, -1}};
  CHECK(closed_row_trails(p) == std::vector<Index>{0, 0, 2, 2, 2});
  SteppedProfile uniform{4, 4, {0, 1, 2, 3}, {0, 1, 2, 3}};
  CHECK(pivot_uniformity(uniform) == Catch::Approx(1.0));
  SteppedProfile clumped{4, 4, {0, 0, 0, 0}, {3, 3, 3, 3}};
  CHECK(pivot_uniformity(clumped) > pivot_uniformity(uniform));
}

TEST_CASE("block_boundaries", "[stepped]") {
  using V = std::vector<BlockRange>;
  CHECK(block_boundaries(10, Partition::fixed_size(4)) == V{{0, 4}, {4, 8}, {8, 10}});
  CHECK(block_boundaries(10, Partition::fixed_count(2)) == V{{0, 5}, {5, 10}});
  CHECK(block_boundaries(2744, Partition::fixed_size(500)).size() == 6);
  CHECK(block_boundaries(0, Partition::fixed_size(3)).empty());
  CHECK(block_boundaries(3, Partition::fixed_count(10)).size() == 3);
  CHECK_THROWS_AS(block_boundaries(10, Partition::fixed_size(0)), ParameterError);
  CHECK_THROWS_AS(block_boundaries(10, Partition::fixed_count(0)), ParameterError);
  for (Index n : {1, 7, 64, 1000})
    for (Index s : {1, 3, 64, 500}) {
      const auto b = block_boundaries(n, Partition::fixed_size(s));
      CHECK(b.front().begin == 0);
      CHECK(b.back().end == n);
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        CHECK(b[i].end == b[i + 1].begin);
        CHECK(b[i].size() == s);
      }
    }
}
