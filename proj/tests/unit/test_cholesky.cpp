#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "schur/cholesky.hpp"
#include "schur/ordering.hpp"
#include "schur/problem.hpp"

using namespace schur;

namespace {

// max |P K P^T - L L^T| / max |K| by dense multiplication.
double reconstruction_error(const CsrMatrix& k, const CholeskyFactor& f) {
  const DenseMatrix pk = csr_to_dense(permute_symmetric(k, f.perm()));
  const DenseMatrix l = csr_to_dense(f.l());
  const DenseMatrix llt = testing::matmul(l.view(), testing::transpose(l.view()).view());
  double diff = 0.0;
  for (Index i = 0; i < pk.rows(); ++i)
    for (Index j = 0; j < pk.cols(); ++j) diff = std::max(diff, std::abs(pk(i, j) - llt(i, j)));
  return diff / max_abs(csr_to_dense(k).view());
}

Index factor_nnz(const CsrMatrix& k, OrderingMethod m) {
  return symbolic_factor(k, fill_reducing_order(k, m)).factor_nnz();
}

}  // namespace

TEST_CASE("fill_reducing_order", "[cholesky]") {
  SECTION("1x1 gives identity") {
    const auto k = CsrMatrix::from_triplets(1, 1, {{0, 0, 3.0}});
    CHECK(fill_reducing_order(k).is_identity());
  }
  SECTION("diagonal gives identity") {
    const auto k = CsrMatrix::from_triplets(4, 4, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}});
    CHECK(fill_reducing_order(k).is_identity());
  }
  SECTION("non-square rejected") {
    CHECK_THROWS_AS(fill_reducing_order(CsrMatrix(2, 3)), DimensionError);
  }
  SECTION("AMD does not add fill on grid Laplacians") {
    for (Index g : {4, 8, 16}) {
      const auto k = testing::grid_laplacian_2d(g);
      const Index natural = factor_nnz(k, OrderingMethod::Natural);
      const Index amd = factor_nnz(k, OrderingMethod::Amd);
      CHECK(amd <= natural);
      // The symbolic count must agree with brute-force elimination.
      const auto perm = fill_reducing_order(k, OrderingMethod::Amd);
      CHECK(amd == testing::dense_fill_count(k, {perm.forward().begin(), perm.forward().end()}));
    }
  }
  SECTION("AMD beats natural order clearly on a 3D subdomain") {
    const auto k = laplace_stiffness(3, 10, 0.1);
    CHECK(factor_nnz(k, OrderingMethod::Amd) < factor_nnz(k, OrderingMethod::Natural));
  }
  SECTION("every method yields a bijection") {
    std::mt19937_64 rng(2);
    for (auto m : {OrderingMethod::Natural, OrderingMethod::Amd, OrderingMethod::ReverseCuthillMcKee}) {
      const auto k = testing::random_spd(40, 0.1, rng);
      const Permutation p = fill_reducing_order(k, m);
      CHECK_NOTHROW(Permutation::from_forward({p.forward().begin(), p.forward().end()}));
    }
  }
}

TEST_CASE("symbolic_factor patterns", "[cholesky]") {
  SECTION("diagonal matrix has a diagonal factor") {
    const auto k = CsrMatrix::from_triplets(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
    const auto s = symbolic_factor(k, Permutation::identity(3));
    CHECK(s.factor_nnz() == 3);
  }
  SECTION("tridiagonal gives bidiagonal") {
    std::vector<Triplet> t;
    for (Index i = 0; i < 6; ++i) {
      t.push_back({i, i, 2});
      if (i > 0) {
        t.push_back({i, i - 1, -1});
        t.push_back({i - 1, i, -1});
      }
    }
    const auto s = symbolic_factor(CsrMatrix::from_triplets(6, 6, t), Permutation::identity(6));
    CHECK(s.factor_nnz() == 11);
    for (Index i = 1; i < 6; ++i) {
      CHECK(s.l_row_ptr[i + 1] - s.l_row_ptr[i] == 2);
      CHECK(s.l_col_idx[s.l_row_ptr[i]] == i - 1);
    }
  }
  SECTION("arrow matrix: dense last row, no other fill") {
    const Index n = 6;
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) {
      t.push_back({i, i, 10});
      if (i + 1 < n) {
        t.push_back({n - 1, i, 1});
        t.push_back({i, n - 1, 1});
      }
    }
    const auto k = CsrMatrix::from_triplets(n, n, t);
    const auto s = symbolic_factor(k, Permutation::identity(n));
    CHECK(s.factor_nnz() == testing::dense_fill_count(k, {0, 1, 2, 3, 4, 5}));
    CHECK(s.l_row_ptr[n] - s.l_row_ptr[n - 1] == n);
    for (Index i = 0; i + 1 < n; ++i) CHECK(s.l_row_ptr[i + 1] - s.l_row_ptr[i] == 1);
  }
}

TEST_CASE("numeric_factor", "[cholesky]") {
  SECTION("identity") {
    const auto k = CsrMatrix::from_triplets(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
    const auto f = factorize(k);
    CHECK(csr_to_dense(f.l()).view()(1, 1) == 1.0);
    CHECK(f.l().nnz() == 3);
  }
  SECTION("hand 2x2") {
    const auto k = CsrMatrix::from_triplets(2, 2, {{0, 0, 4}, {0, 1, 2}, {1, 0, 2}, {1, 1, 5}});
    const auto f = factorize(k, OrderingMethod::Natural);
    const DenseMatrix l = csr_to_dense(f.l());
    CHECK(l(0, 0) == 2.0);
    CHECK(l(1, 0) == 1.0);
    CHECK(l(1, 1) == 2.0);
    CHECK(l(0, 1) == 0.0);
  }
  SECTION("not SPD reports the failing column") {
    const auto k = CsrMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}});
    try {
      factorize(k, OrderingMethod::Natural);
      FAIL("expected NotSpdError");
    } catch (const NotSpdError& e) {
      CHECK(e.column() == 1);
    }
  }
  SECTION("3D subdomain reconstruction (n = 343)") {
    const auto k = regularize(laplace_stiffness(3, 6, 1.0 / 6.0), 1.0);
    const auto f = factorize(k);
    CHECK(reconstruction_error(k, f) < 1e-12);
    for (Index i = 0; i < f.n(); ++i) {
      const auto cols = f.l().row_cols(i);
      REQUIRE(cols.back() == i);
      REQUIRE(f.l().row_values(i).back() > 0.0);
    }
  }
  SECTION("pattern reuse across refactorizations") {
    std::mt19937_64 rng(4);
    const auto k1 = testing::random_spd(30, 0.15, rng);
    CsrMatrix k2 = k1;
    for (double& v : k2.values()) v *= 1.5;
    auto sym = std::make_shared<const SymbolicFactor>(symbolic_factor(k1, fill_reducing_order(k1)));
    const auto f1 = numeric_factor(k1, sym);
    const auto f2 = numeric_factor(k2, sym);
    CHECK(f1.l().same_pattern(f2.l()));
    CHECK(f1.l() != f2.l());
    CHECK(reconstruction_error(k2, f2) < 1e-12);
    // A different pattern is rejected.
    const auto k3 = testing::random_spd(30, 0.3, rng);
    CHECK_THROWS_AS(numeric_factor(k3, sym), ConsistencyError);
  }
}

TEST_CASE("trsv_lower", "[cholesky]") {
  SECTION("identity") {
    const auto l = CsrMatrix::from_triplets(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
    const std::vector<double> b{1, -2, 3};
    CHECK(trsv_lower(l, b) == b);
    CHECK(trsv_lower(l, b, Transpose::Yes) == b);
  }
  SECTION("hand forward substitution") {
    const auto l = CsrMatrix::from_triplets(2, 2, {{0, 0, 2}, {1, 0, 1}, {1, 1, 1}});
    const std::vector<double> b{4, 3};
    CHECK(trsv_lower(l, b) == std::vector<double>{2, 1});
  }
  SECTION("zero diagonal is singular") {
    const auto l = CsrMatrix::from_triplets(2, 2, {{0, 0, 2}, {1, 0, 1}, {1, 1, 0}});
    const std::vector<double> b{1, 1};
    CHECK_THROWS_AS(trsv_lower(l, b), SingularError);
  }
  SECTION("two solves match a dense solve of P K P^T") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
      const auto k = testing::random_spd(20, 0.2, rng);
      const auto f = factorize(k);
      std::vector<double> b(20);
      std::uniform_real_distribution<double> u(-1, 1);
      for (auto& v : b) v = u(rng);
      const auto x = trsv_lower(f.l(), trsv_lower(f.l(), b), Transpose::Yes);

      const DenseMatrix pk = csr_to_dense(permute_symmetric(k, f.perm()));
      DenseMatrix rhs(20, 1);
      for (Index i = 0; i < 20; ++i) rhs(i, 0) = b[i];
      const DenseMatrix ref = testing::lu_solve(pk.view(), rhs.view());
      for (Index i = 0; i < 20; ++i) CHECK(x[i] == Catch::Approx(ref(i, 0)).epsilon(1e-12).margin(1e-13));
    }
  }
}
