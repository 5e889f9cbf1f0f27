#pragma once

#include <functional>
#include <vector>

#include "lagrange.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace stpe {

// Continuous tensor-product Lagrange space Q_r on a uniform square mesh,
// with homogeneous Dirichlet values on the whole boundary.
//
// Scalar nodes sit on the global (r*N+1)^2 lattice, numbered lexicographically
// by (y, x). A vector space (components == 2) stores all x-component dofs
// first, then all y-component dofs. Local cell dofs follow the same y-major,
// component-blocked pattern.
class FESpace {
 public:
  FESpace(const Mesh& mesh, int order, int components);

  const Mesh& mesh() const { return mesh_; }
  int order() const { return order_; }
  int components() const { return components_; }

  int nodes_per_side() const { return nodes_per_side_; }
  int n_scalar_dofs() const { return nodes_per_side_ * nodes_per_side_; }
  int n_dofs() const { return components_ * n_scalar_dofs(); }
  int n_local_scalar() const { return (order_ + 1) * (order_ + 1); }
  int n_local() const { return components_ * n_local_scalar(); }

  const LagrangeBasis1D& basis1d() const { return basis1d_; }

  // Coordinate of a scalar lattice node.
  Vec2 node_coord(int scalar_dof) const;
  // Coordinate of any global dof (both components share the lattice).
  Vec2 dof_coord(int dof) const { return node_coord(dof % n_scalar_dofs()); }

  bool is_boundary_node(int scalar_dof) const;
  // Sorted global ids of all constrained dofs (every component).
  const std::vector<int>& dirichlet_dofs() const { return dirichlet_; }

  // Global scalar lattice id of local scalar node `local` in `cell`.
  int cell_scalar_dof(int cell, int local) const;
  // Global ids of all local dofs of `cell`, component blocks in order.
  void cell_dofs(int cell, std::vector<int>& out) const;

  // Scalar shape values and reference gradients at one reference point.
  struct BasisPoint {
    Vector val;              // n_local_scalar
    Matrix grad;             // n_local_scalar x 2, d/dxhat and d/dyhat
  };
  BasisPoint eval_basis(Vec2 ref_point) const;

  // Shape table at quadrature points; identical for every cell.
  struct BasisTable {
    Matrix val;      // nq x n_local_scalar
    Matrix dx, dy;   // reference gradients
  };
  BasisTable tabulate(const SpatialQuadrature& quad) const;

  // Nodal interpolation.
  Vector interpolate(const std::function<double(Vec2)>& f) const;   // scalar space
  Vector interpolate(const std::function<Vec2(Vec2)>& f) const;     // vector space

  // Point evaluation of a coefficient vector (physical gradients).
  double value_scalar(const Vector& coeffs, Vec2 x) const;
  Vec2 gradient_scalar(const Vector& coeffs, Vec2 x) const;
  Vec2 value_vector(const Vector& coeffs, Vec2 x) const;
  Mat2 jacobian_vector(const Vector& coeffs, Vec2 x) const;  // row i = grad of component i

 private:
  int cell_containing(Vec2 x, Vec2& ref) const;

  Mesh mesh_;
  int order_;
  int components_;
  int nodes_per_side_;
  LagrangeBasis1D basis1d_;       // reference nodes on [0,1]
  std::vector<double> ref_nodes_;
  std::vector<int> dirichlet_;
};

// Zero the constrained entries of a coefficient vector.
void zero_dirichlet(const FESpace& space, Vector& x);

}  // namespace stpe
