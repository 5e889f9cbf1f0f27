#pragma once

#include <functional>
#include <vector>

#include "fespace.hpp"
#include "model.hpp"
#include "timedisc.hpp"
#include "types.hpp"

namespace stpe {

// Raw (unconstrained) bilinear forms. All cells of the uniform mesh share one
// element matrix, which is assembled once and scattered.
SparseMatrix assemble_mass(const FESpace& space, const SpatialQuadrature& quad);
// <C eps(.), eps(.)> on a vector space.
SparseMatrix assemble_elasticity(const FESpace& V, const MaterialParams& mat,
                                 const SpatialQuadrature& quad);
// <K grad(.), grad(.)> on a scalar space.
SparseMatrix assemble_diffusion(const FESpace& Q, const Mat2& K, const SpatialQuadrature& quad);
// b(chi, q) = int q div(chi); rows belong to the vector space V, columns to Q.
SparseMatrix assemble_coupling(const FESpace& V, const FESpace& Q, const SpatialQuadrature& quad);

// Load vectors (no boundary treatment).
Vector assemble_vector_load(const FESpace& V, const SpatialQuadrature& quad,
                            const std::function<Vec2(Vec2)>& f);
Vector assemble_scalar_load(const FESpace& Q, const SpatialQuadrature& quad,
                            const std::function<double(Vec2)>& f);
// <C sym(jac(.)), eps(chi_i)> and <K grad(.), grad(psi_i)>, for projection rhs.
Vector assemble_elasticity_load(const FESpace& V, const MaterialParams& mat,
                                const SpatialQuadrature& quad,
                                const std::function<Mat2(Vec2)>& jacobian);
Vector assemble_diffusion_load(const FESpace& Q, const Mat2& K, const SpatialQuadrature& quad,
                               const std::function<Vec2(Vec2)>& gradient);

// Symmetric elimination of constrained dofs: zeroes the listed rows and
// columns; with unit_diagonal, puts 1 on the diagonal of constrained rows.
// Row and column lists must be sorted.
void apply_dirichlet(SparseMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols,
                     bool unit_diagonal);

// The five spatial operators of the coupled system, with boundary conditions
// eliminated. B keeps zeroed constrained rows/columns without a diagonal.
struct OperatorBlocks {
  int n_u = 0;
  int n_p = 0;
  SparseMatrix Mu;  // vector mass
  SparseMatrix Mp;  // scalar mass
  SparseMatrix Ae;  // elasticity stiffness
  SparseMatrix Ap;  // pressure diffusion stiffness
  SparseMatrix B;   // displacement-pressure coupling, n_u x n_p
};

OperatorBlocks assemble_blocks(const FESpace& V, const FESpace& Q, const MaterialParams& mat,
                               const SpatialQuadrature& quad);

// One slab of the space-time system. Unknowns are the temporal nodes
// j = 1..k of u, v, p (node 0 carries the known left-endpoint values);
// field blocks in the order u, v, p, each grouped by temporal node.
struct SlabSystem {
  SparseMatrix A;
  int k = 0;
  int n_u = 0;
  int n_p = 0;
  double tau = 0;

  int n_unknowns() const { return k * (2 * n_u + n_p); }
  // field: 0 = u, 1 = v, 2 = p; node in 1..k.
  int offset(int field, int node) const;
};

SlabSystem build_slab_system(const OperatorBlocks& blocks, const SlabBasis& basis,
                             const MaterialParams& mat, double tau);

struct Forcing {
  std::function<Vec2(Vec2, double)> f;
  std::function<double(Vec2, double)> g;
};

// Right-hand side of one slab: quadrature of the loads against the test
// functions plus the contributions of the known left-endpoint values.
Vector assemble_slab_rhs(const OperatorBlocks& blocks, const SlabBasis& basis,
                         const MaterialParams& mat, const FESpace& V, const FESpace& Q,
                         const SpatialQuadrature& quad, const Forcing& forcing, double t_left,
                         double tau, const Vector& u0, const Vector& v0, const Vector& p0);

}  // namespace stpe
