#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles.hpp"
#include "schur/problem.hpp"

using namespace schur;

namespace {

// Multiplier count by walking the global grid and testing every subdomain's
// closed box for containment.
Index mesh_walk_multiplier_count(int dim, Index e, Index S) {
  const Index g = S * e + 1;
  Index total = 0;
  const Index nodes = dim == 2 ? g * g : g * g * g;
  for (Index node = 0; node < nodes; ++node) {
    const Index c[3] = {node % g, (node / g) % g, dim == 3 ? node / (g * g) : 0};
    Index owners = 0;
    const Index subs = dim == 2 ? S * S : S * S * S;
    for (Index s = 0; s < subs; ++s) {
      const Index p[3] = {s % S, (s / S) % S, dim == 3 ? s / (S * S) : 0};
      bool inside = true;
      for (int d = 0; d < dim; ++d) inside &= c[d] >= p[d] * e && c[d] <= (p[d] + 1) * e;
      owners += inside;
    }
    total += owners - 1;
  }
  return total;
}

double min_eigenvalue(const CsrMatrix& k) {
  return testing::symmetric_eigenvalues(csr_to_dense(k).view()).front();
}

}  // namespace

TEST_CASE("generate: degenerate single subdomain", "[problem_gen]") {
  const auto d = generate({2, 1, 1, 1.0});
  REQUIRE(d.subdomains.size() == 1);
  CHECK(d.subdomains[0].n() == 4);
  CHECK(d.total_multipliers == 0);
  CHECK(d.subdomains[0].bt.rows() == 4);
  CHECK(d.subdomains[0].bt.cols() == 0);
}

TEST_CASE("generate: multiplier counts match a mesh walk", "[problem_gen]") {
  const auto d = generate({2, 2, 2, 1.0});
  CHECK(d.subdomains.size() == 4);
  CHECK(d.total_multipliers == mesh_walk_multiplier_count(2, 2, 2));
  CHECK(d.total_multipliers == 11);
  for (auto [dim, e, s] : {std::tuple{2, 3, 3}, std::tuple{3, 2, 2}, std::tuple{3, 2, 3}}) {
    const auto dd = generate({dim, e, s, 1.0});
    CHECK(dd.total_multipliers == mesh_walk_multiplier_count(dim, e, s));
  }
}

TEST_CASE("generate: smallest 3D subdomain has 64 DOFs", "[problem_gen]") {
  const auto d = generate({3, 3, 1, 1.0});
  CHECK(d.subdomains[0].n() == 64);
}

TEST_CASE("generate: gluing invariants", "[problem_gen]") {
  for (auto spec : {DecompositionSpec{2, 3, 3, 1.0}, DecompositionSpec{3, 2, 2, 1.0}}) {
    const auto d = generate(spec);
    // Each multiplier appears in exactly two subdomains with opposite signs.
    std::map<Index, std::vector<double>> signs;
    for (const auto& sd : d.subdomains) {
      for (Index c = 0; c < sd.m(); ++c) {
        REQUIRE(sd.bt.transposed().row_nnz(c) == 1);
      }
      for (Index r = 0; r < sd.n(); ++r) {
        const auto cols = sd.bt.row_cols(r);
        const auto vals = sd.bt.row_values(r);
        for (std::size_t t = 0; t < cols.size(); ++t) signs[sd.lambda_map[cols[t]]].push_back(vals[t]);
      }
      std::vector<Index> lm = sd.lambda_map;
      std::sort(lm.begin(), lm.end());
      CHECK(std::adjacent_find(lm.begin(), lm.end()) == lm.end());
    }
    REQUIRE(static_cast<Index>(signs.size()) == d.total_multipliers);
    for (const auto& [lambda, s] : signs) {
      REQUIRE(s.size() == 2);
      CHECK(s[0] + s[1] == 0.0);
    }

    // B u = 0 for any continuous field sampled on the global mesh.
    std::vector<double> q(static_cast<std::size_t>(d.total_multipliers), 0.0);
    for (const auto& sd : d.subdomains) {
      std::vector<double> u(static_cast<std::size_t>(sd.n()));
      for (Index i = 0; i < sd.n(); ++i) u[i] = std::sin(0.37 * static_cast<double>(sd.global_nodes[i])) + 2.0;
      const auto local = spmv_transposed(sd.bt, u);
      for (Index c = 0; c < sd.m(); ++c) q[sd.lambda_map[c]] += local[c];
    }
    for (double v : q) CHECK(v == 0.0);
  }
}

TEST_CASE("generate: k_reg is SPD and generation is deterministic", "[problem_gen]") {
  const DecompositionSpec spec{2, 3, 2, 1.0};
  const auto a = generate(spec);
  const auto b = generate(spec);
  for (std::size_t i = 0; i < a.subdomains.size(); ++i) {
    CHECK(a.subdomains[i].k_reg == b.subdomains[i].k_reg);
    CHECK(a.subdomains[i].bt == b.subdomains[i].bt);
    CHECK(min_eigenvalue(a.subdomains[i].k_reg) > 0.0);
  }
  CHECK_THROWS_AS(generate({4, 1, 1, 1.0}), ParameterError);
  CHECK_THROWS_AS(generate({2, 0, 1, 1.0}), ParameterError);
  CHECK_THROWS_AS(generate({2, 1, 1, 0.0}), ParameterError);
}

TEST_CASE("element_stiffness_2d", "[problem_gen]") {
  SECTION("unit right triangle") {
    const DenseMatrix k = element_stiffness_2d({{{0, 0}, {1, 0}, {0, 1}}});
    const DenseMatrix expect{{1, -0.5, -0.5}, {-0.5, 0.5, 0}, {-0.5, 0, 0.5}};
    CHECK(relative_frobenius_error(k.view(), expect.view()) < 1e-15);
  }
  SECTION("row sums vanish and scaling leaves it unchanged") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
      std::array<Point2, 3> v{{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}}};
      const DenseMatrix k = element_stiffness_2d(v);
      for (Index r = 0; r < 3; ++r) CHECK(std::abs(k(r, 0) + k(r, 1) + k(r, 2)) < 1e-10 * max_abs(k.view()));
      for (auto& p : v) p = {2 * p[0], 2 * p[1]};
      CHECK(relative_frobenius_error(element_stiffness_2d(v).view(), k.view()) < 1e-13);
    }
  }
  SECTION("degenerate") {
    CHECK_THROWS_AS(element_stiffness_2d({{{0, 0}, {1, 1}, {2, 2}}}), DegenerateElementError);
  }
}

namespace {

// grad(phi_i) . grad(phi_j) integrated with a 4-point rule; basis gradients
// from finite differences of the interpolant, coefficients from a dense solve.
DenseMatrix quadrature_stiffness_3d(const std::array<Point3, 4>& v) {
  DenseMatrix a(4, 4), id(4, 4);
  for (int i = 0; i < 4; ++i) {
    a(i, 0) = 1.0;
    for (int d = 0; d < 3; ++d) a(i, d + 1) = v[i][d];
    id(i, i) = 1.0;
  }
  const DenseMatrix coef = testing::lu_solve(a.view(), id.view());  // column j = phi_j
  auto phi = [&](int j, const Point3& x) {
    return coef(0, j) + coef(1, j) * x[0] + coef(2, j) * x[1] + coef(3, j) * x[2];
  };
  double e[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e[r][c] = v[c + 1][r] - v[0][r];
  const double vol = std::abs(e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                              e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                              e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])) / 6.0;
  const double alpha = 0.5854101966249685, beta = 0.1381966011250105;
  DenseMatrix k(4, 4);
  const double h = 1e-6;
  for (int qp = 0; qp < 4; ++qp) {
    Point3 x{0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int d = 0; d < 3; ++d) x[d] += (i == qp ? alpha : beta) * v[i][d];
    std::array<Point3, 4> g;
    for (int j = 0; j < 4; ++j)
      for (int d = 0; d < 3; ++d) {
        Point3 xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        g[j][d] = (phi(j, xp) - phi(j, xm)) / (2 * h);
      }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        k(i, j) += 0.25 * vol * (g[i][0] * g[j][0] + g[i][1] * g[j][1] + g[i][2] * g[j][2]);
  }
  return k;
}

}  // namespace

TEST_CASE("element_stiffness_3d", "[problem_gen]") {
  SECTION("reference tetrahedron") {
    const DenseMatrix k = element_stiffness_3d({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    CHECK(k(0, 0) == Catch::Approx(0.5).epsilon(1e-15));
  }
  SECTION("random tetrahedra: zero row sums and quadrature agreement") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::array<Point3, 4> v;
      for (auto& p : v) p = {u(rng), u(rng), u(rng)};
      const DenseMatrix k = element_stiffness_3d(v);
      for (Index r = 0; r < 4; ++r)
        CHECK(std::abs(k(r, 0) + k(r, 1) + k(r, 2) + k(r, 3)) < 1e-10 * max_abs(k.view()));
      const DenseMatrix ref = quadrature_stiffness_3d(v);
      CHECK(relative_frobenius_error(k.view(), ref.view()) < 1e-6);
    }
  }
  SECTION("degenerate") {
    CHECK_THROWS_AS(element_stiffness_3d({{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 1}}}), DegenerateElementError);
  }
}

TEST_CASE("regularize", "[problem_gen]") {
  SECTION("SPD input: single diagonal entry grows, pattern kept") {
    const auto k = CsrMatrix::from_triplets(2, 2, {{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}});
    const auto r = regularize(k, 1.0);
    CHECK(r.same_pattern(k));
    CHECK(r.at(0, 0) == 4.0);  // 2 + 1 * trace(4) / 2
    CHECK(r.at(1, 1) == 2.0);
    CHECK(min_eigenvalue(r) > 0.0);
  }
  SECTION("floating 2x1-element subdomain becomes SPD") {
    // Two unit squares side by side, triangulated; singular with constant kernel.
    std::vector<Triplet> t;
    const int cells[2][4] = {{0, 1, 4, 3}, {1, 2, 5, 4}};
    const Point2 xy[6] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    for (const auto& c : cells)
      for (const auto& tri : {std::array<int, 3>{c[0], c[1], c[2]}, std::array<int, 3>{c[0], c[2], c[3]}}) {
        const DenseMatrix ke = element_stiffness_2d({xy[tri[0]], xy[tri[1]], xy[tri[2]]});
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) t.push_back({tri[a], tri[b], ke(a, b)});
      }
    std::map<std::pair<Index, Index>, double> acc;
    for (const auto& e : t) acc[{e.row, e.col}] += e.value;
    std::vector<Triplet> merged;
    for (const auto& [rc, v] : acc) merged.push_back({rc.first, rc.second, v});
    const auto k = CsrMatrix::from_triplets(6, 6, merged);
    CHECK(min_eigenvalue(k) < 1e-12);
    CHECK(min_eigenvalue(regularize(k, 1.0)) > 1e-6);
  }
  SECTION("non-positive rho") {
    const auto k = CsrMatrix::from_triplets(1, 1, {{0, 0, 1}});
    CHECK_THROWS_AS(regularize(k, 0.0), ParameterError);
    CHECK_THROWS_AS(regularize(k, -1.0), ParameterError);
  }
}
