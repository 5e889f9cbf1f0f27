#pragma once

#include <memory>
#include <stdexcept>

#include "assembly.hpp"
#include "timedisc.hpp"
#include "types.hpp"

namespace stpe {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sparse direct LU (UMFPACK). One factorization serves every slab of a
// refinement level since the slab matrix does not change along the march.
class LUSolver {
 public:
  explicit LUSolver(const SparseMatrix& A);  // throws SolverError if singular
  ~LUSolver();
  LUSolver(LUSolver&&) noexcept;
  LUSolver& operator=(LUSolver&&) noexcept;

  Vector solve(const Vector& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Scaled residual ||Ax - b||_inf / max(||b||_inf, 1).
double scaled_residual(const SparseMatrix& A, const Vector& x, const Vector& b);

struct MarchResult {
  Trajectory u, v, p;
  double max_residual = 0.0;  // largest scaled residual over all slabs
};

// Advance the coupled system slab by slab from the given initial data.
// Throws SolverError if the factorization fails or a slab residual
// exceeds 1e-8.
MarchResult march(const OperatorBlocks& blocks, const SlabSystem& sys, const SlabBasis& basis,
                  const FESpace& V, const FESpace& Q, const SpatialQuadrature& load_quad,
                  const MaterialParams& mat, const Forcing& forcing, const TimeMesh& tm,
                  Vector u0, Vector v0, Vector p0);

}  // namespace stpe
