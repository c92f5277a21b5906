#pragma once

#include <array>
#include <vector>

#include "schur/csr.hpp"
#include "schur/dense.hpp"

namespace schur {

/// Unit square (dim 2, triangles) or unit cube (dim 3, tetrahedra) split into
/// subdomains_per_edge^dim subdomains of elements_per_edge^dim grid cells
/// each.  A subdomain therefore has (elements_per_edge + 1)^dim DOFs.
struct DecompositionSpec {
  int dim = 3;
  Index elements_per_edge = 3;
  Index subdomains_per_edge = 1;
  double regularization_rho = 1.0;

  /// Throws ParameterError on counts < 1, dim not in {2, 3}, or rho <= 0.
  void validate() const;
  Index nodes_per_subdomain() const;
};

/// One subdomain's regularized stiffness and gluing matrix.
struct SubdomainProblem {
  Index index = 0;
  CsrMatrix k_reg;                  // n x n, SPD
  CsrMatrix bt;                     // n x m, transpose of the local gluing matrix
  std::vector<Index> lambda_map;    // local multiplier -> global multiplier
  std::vector<Index> global_nodes;  // local DOF -> global mesh node

  Index n() const { return k_reg.rows(); }
  Index m() const { return bt.cols(); }
};

struct Decomposition {
  DecompositionSpec spec;
  std::vector<SubdomainProblem> subdomains;
  Index total_multipliers = 0;
  Index total_dofs = 0;    // sum of subdomain DOFs (interface nodes duplicated)
  Index global_nodes = 0;  // nodes of the undecomposed mesh
};

/// Deterministic: the same spec always yields bit-identical matrices.
Decomposition generate(const DecompositionSpec& spec);

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

/// P1 Laplace element matrices, |T| * grad(phi_i) . grad(phi_j).
DenseMatrix element_stiffness_2d(const std::array<Point2, 3>& v);
DenseMatrix element_stiffness_3d(const std::array<Point3, 4>& v);

/// Unregularized Laplace stiffness on a structured grid of
/// elements_per_edge^dim cells with edge length h, lexicographic node order.
CsrMatrix laplace_stiffness(int dim, Index elements_per_edge, double h);

/// Grounds node 0: adds rho * trace(k) / n to k(0, 0).  Pattern unchanged.
CsrMatrix regularize(const CsrMatrix& k, double rho);

}  // namespace schur
