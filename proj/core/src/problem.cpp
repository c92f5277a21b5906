#include "schur/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schur {

void DecompositionSpec::validate() const {
  if (dim != 2 && dim != 3) throw ParameterError("dim must be 2 or 3");
  if (elements_per_edge < 1) throw ParameterError("elements_per_edge must be >= 1");
  if (subdomains_per_edge < 1) throw ParameterError("subdomains_per_edge must be >= 1");
  if (!(regularization_rho > 0.0)) throw ParameterError("regularization rho must be positive");
}

Index DecompositionSpec::nodes_per_subdomain() const {
  Index n = 1;
  for (int d = 0; d < dim; ++d) n *= elements_per_edge + 1;
  return n;
}

DenseMatrix element_stiffness_2d(const std::array<Point2, 3>& v) {
  const double x10 = v[1][0] - v[0][0], y10 = v[1][1] - v[0][1];
  const double x20 = v[2][0] - v[0][0], y20 = v[2][1] - v[0][1];
  const double det = x10 * y20 - x20 * y10;  // twice the signed area
  if (det == 0.0) throw DegenerateElementError("zero-area triangle");
  // grad(phi_i) = (y_j - y_k, x_k - x_j) / det for (i, j, k) cyclic.
  std::array<Point2, 3> g;
  for (int i = 0; i < 3; ++i) {
    const auto& pj = v[(i + 1) % 3];
    const auto& pk = v[(i + 2) % 3];
    g[i] = {(pj[1] - pk[1]) / det, (pk[0] - pj[0]) / det};
  }
  const double area = 0.5 * std::abs(det);
  DenseMatrix k(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k(i, j) = area * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
  return k;
}

DenseMatrix element_stiffness_3d(const std::array<Point3, 4>& v) {
  // Columns of J are the edge vectors from vertex 0; rows of J^{-1} are the
  // gradients of phi_1..phi_3.
  double j[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j[r][c] = v[c + 1][r] - v[0][r];
  const double det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                     j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                     j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
  if (det == 0.0) throw DegenerateElementError("zero-volume tetrahedron");
  double inv[3][3];
  inv[0][0] = (j[1][1] * j[2][2] - j[1][2] * j[2][1]) / det;
  inv[0][1] = (j[0][2] * j[2][1] - j[0][1] * j[2][2]) / det;
  inv[0][2] = (j[0][1] * j[1][2] - j[0][2] * j[1][1]) / det;
  inv[1][0] = (j[1][2] * j[2][0] - j[1][0] * j[2][2]) / det;
  inv[1][1] = (j[0][0] * j[2][2] - j[0][2] * j[2][0]) / det;
  inv[1][2] = (j[0][2] * j[1][0] - j[0][0] * j[1][2]) / det;
  inv[2][0] = (j[1][0] * j[2][1] - j[1][1] * j[2][0]) / det;
  inv[2][1] = (j[0][1] * j[2][0] - j[0][0] * j[2][1]) / det;
  inv[2][2] = (j[0][0] * j[1][1] - j[0][1] * j[1][0]) / det;

  std::array<Point3, 4> g;
  for (int i = 0; i < 3; ++i) g[i + 1] = {inv[i][0], inv[i][1], inv[i][2]};
  for (int c = 0; c < 3; ++c) g[0][c] = -(g[1][c] + g[2][c] + g[3][c]);
  const double vol = std::abs(det) / 6.0;
  DenseMatrix k(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      k(a, b) = vol * (g[a][0] * g[b][0] + g[a][1] * g[b][1] + g[a][2] * g[b][2]);
  return k;
}

namespace {

// Sorts and sums duplicate triplets.
CsrMatrix assemble_summed(Index n, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(t.size());
  for (const auto& e : t) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  return CsrMatrix::from_triplets(n, n, std::move(merged));
}

}  // namespace

CsrMatrix laplace_stiffness(int dim, Index e, double h) {
  if (dim != 2 && dim != 3) throw ParameterError("dim must be 2 or 3");
  if (e < 1) throw ParameterError("elements_per_edge must be >= 1");
  const Index s = e + 1;
  std::vector<Triplet> t;
  if (dim == 2) {
    auto node = [s](Index x, Index y) { return x + s * y; };
    for (Index y = 0; y < e; ++y)
      for (Index x = 0; x < e; ++x) {
        // Two triangles per cell, split along the (0,0)-(1,1) diagonal.
        const std::array<std::array<Index, 2>, 4> c{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
        const int tris[2][3] = {{0, 1, 2}, {0, 2, 3}};
        for (const auto& tri : tris) {
          std::array<Point2, 3> pts;
          std::array<Index, 3> ids;
          for (int a = 0; a < 3; ++a) {
            const auto& off = c[tri[a]];
            pts[a] = {static_cast<double>(x + off[0]) * h, static_cast<double>(y + off[1]) * h};
            ids[a] = node(x + off[0], y + off[1]);
          }
          const DenseMatrix ke = element_stiffness_2d(pts);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) t.push_back({ids[a], ids[b], ke(a, b)});
        }
      }
    return assemble_summed(s * s, std::move(t));
  }
  auto node = [s](Index x, Index y, Index z) { return x + s * (y + s * z); };
  // Kuhn subdivision: one tetrahedron per ordering of the three axes, walking
  // from the cell's low corner to its high corner.
  const int axis_orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (Index z = 0; z < e; ++z)
    for (Index y = 0; y < e; ++y)
      for (Index x = 0; x < e; ++x)
        for (const auto& ord : axis_orders) {
          std::array<Index, 3> cur{x, y, z};
          std::array<Point3, 4> pts;
          std::array<Index, 4> ids;
          for (int a = 0; a < 4; ++a) {
            if (a > 0) ++cur[ord[a - 1]];
            pts[a] = {static_cast<double>(cur[0]) * h, static_cast<double>(cur[1]) * h,
                      static_cast<double>(cur[2]) * h};
            ids[a] = node(cur[0], cur[1], cur[2]);
          }
          const DenseMatrix ke = element_stiffness_3d(pts);
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t.push_back({ids[a], ids[b], ke(a, b)});
        }
  return assemble_summed(s * s * s, std::move(t));
}

CsrMatrix regularize(const CsrMatrix& k, double rho) {
  if (!(rho > 0.0)) throw ParameterError("regularization rho must be positive");
  if (k.rows() != k.cols() || k.rows() == 0) throw DimensionError("regularize: need a non-empty square matrix");
  double trace = 0.0;
  for (Index r = 0; r < k.rows(); ++r) trace += k.at(r, r);
  const auto cols = k.row_cols(0);
  if (cols.empty() || cols.front() != 0) throw ConsistencyError("regularize: k(0,0) is not stored");
  CsrMatrix out = k;
  out.values()[0] += rho * trace / static_cast<double>(k.rows());
  return out;
}

Decomposition generate(const DecompositionSpec& spec) {
  spec.validate();
  const int dim = spec.dim;
  const Index e = spec.elements_per_edge;
  const Index S = spec.subdomains_per_edge;
  const Index side = e + 1;         // nodes per subdomain edge
  const Index global_side = S * e + 1;
  const double h = 1.0 / static_cast<double>(S * e);

  Index num_sub = 1, global_nodes = 1;
  for (int d = 0; d < dim; ++d) {
    num_sub *= S;
    global_nodes *= global_side;
  }

  const CsrMatrix k_reg = regularize(laplace_stiffness(dim, e, h), spec.regularization_rho);
  const Index n = k_reg.rows();

  Decomposition out;
  out.spec = spec;
  out.global_nodes = global_nodes;
  out.total_dofs = n * num_sub;
  out.subdomains.resize(static_cast<std::size_t>(num_sub));

  std::vector<std::vector<Triplet>> bt_entries(static_cast<std::size_t>(num_sub));
  for (Index s = 0; s < num_sub; ++s) {
    auto& sd = out.subdomains[s];
    sd.index = s;
    sd.k_reg = k_reg;
    sd.global_nodes.resize(static_cast<std::size_t>(n));
    std::array<Index, 3> pos{s % S, (s / S) % S, s / (S * S)};
    for (Index local = 0; local < n; ++local) {
      std::array<Index, 3> l{local % side, (local / side) % side, local / (side * side)};
      Index g = 0, stride = 1;
      for (int d = 0; d < dim; ++d) {
        g += (pos[d] * e + l[d]) * stride;
        stride *= global_side;
      }
      sd.global_nodes[local] = g;
    }
  }

  // Walk the global nodes in order; a node shared by subdomains s_0 < ... <
  // s_{k-1} gets the chain of constraints u_{s_j} - u_{s_{j+1}} = 0.
  Index next_multiplier = 0;
  std::vector<std::pair<Index, Index>> owners;  // (subdomain, local dof)
  for (Index g = 0; g < global_nodes; ++g) {
    std::array<Index, 3> gc{g % global_side, (g / global_side) % global_side,
                            g / (global_side * global_side)};
    // Candidate subdomain coordinates per axis.
    std::array<std::vector<Index>, 3> cand;
    for (int d = 0; d < 3; ++d) {
      if (d >= dim) {
        cand[d] = {0};
        continue;
      }
      const Index q = gc[d] / e, r = gc[d] % e;
      if (r == 0 && q > 0 && q < S) cand[d] = {q - 1, q};
      else cand[d] = {std::min(q, S - 1)};
    }
    owners.clear();
    for (Index cz : cand[2])
      for (Index cy : cand[1])
        for (Index cx : cand[0]) {
          const Index s = cx + S * (cy + S * cz);
          const std::array<Index, 3> l{gc[0] - cx * e, dim > 1 ? gc[1] - cy * e : 0,
                                       dim > 2 ? gc[2] - cz * e : 0};
          owners.emplace_back(s, l[0] + side * (l[1] + side * l[2]));
        }
    std::sort(owners.begin(), owners.end());
    for (std::size_t j = 0; j + 1 < owners.size(); ++j) {
      const Index lambda = next_multiplier++;
      for (int side_sign = 0; side_sign < 2; ++side_sign) {
        const auto [s, local] = owners[j + side_sign];
        auto& sd = out.subdomains[s];
        const auto col = static_cast<Index>(sd.lambda_map.size());
        sd.lambda_map.push_back(lambda);
        bt_entries[s].push_back({local, col, side_sign == 0 ? 1.0 : -1.0});
      }
    }
  }
  out.total_multipliers = next_multiplier;
  for (Index s = 0; s < num_sub; ++s) {
    auto& sd = out.subdomains[s];
    sd.bt = CsrMatrix::from_triplets(n, static_cast<Index>(sd.lambda_map.size()),
                                     std::move(bt_entries[s]));
  }
  return out;
}

}  // namespace schur
