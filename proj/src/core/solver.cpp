#include "solver.hpp"

#include <Eigen/SparseLU>
#include <Eigen/UmfPackSupport>

#include <cmath>
#include <string>

namespace stpe {

struct LUSolver::Impl {
  SparseMatrix A;  // UMFPACK keeps pointers into this copy
  Eigen::UmfPackLU<SparseMatrix> lu;
};

namespace {

// UMFPACK reports failure without naming the offending pivot; rerun the
// slower Eigen factorization just to produce a useful message.
std::string diagnose(const SparseMatrix& A) {
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) return lu.lastErrorMessage();
  return "factorization failed";
}

}  // namespace

LUSolver::LUSolver(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
  impl_->A = A;
  impl_->A.makeCompressed();
  impl_->lu.compute(impl_->A);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverError("LU factorization failed: " + diagnose(impl_->A));
}

LUSolver::~LUSolver() = default;
LUSolver::LUSolver(LUSolver&&) noexcept = default;
LUSolver& LUSolver::operator=(LUSolver&&) noexcept = default;

Vector LUSolver::solve(const Vector& b) const {
  Vector x = impl_->lu.solve(b);
  if (impl_->lu.info() != Eigen::Success) throw SolverError("LU back substitution failed");
  return x;
}

double scaled_residual(const SparseMatrix& A, const Vector& x, const Vector& b) {
  double r = (A * x - b).cwiseAbs().maxCoeff();
  return r / std::max(b.cwiseAbs().maxCoeff(), 1.0);
}

MarchResult march(const OperatorBlocks& blocks, const SlabSystem& sys, const SlabBasis& basis,
                  const FESpace& V, const FESpace& Q, const SpatialQuadrature& load_quad,
                  const MaterialParams& mat, const Forcing& forcing, const TimeMesh& tm,
                  Vector u0, Vector v0, Vector p0) {
  int k = basis.k;
  int n_u = blocks.n_u, n_p = blocks.n_p;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    if (std::abs(tm.tau(n) - sys.tau) > 1e-12 * sys.tau)
      throw SolverError("march: slab length differs from the factorized system");
  }

  LUSolver lu(sys.A);
  MarchResult res;
  res.u.k = res.v.k = res.p.k = k;
  res.u.nodes.resize(tm.n_slabs());
  res.v.nodes.resize(tm.n_slabs());
  res.p.nodes.resize(tm.n_slabs());

  for (int n = 0; n < tm.n_slabs(); ++n) {
    Vector rhs = assemble_slab_rhs(blocks, basis, mat, V, Q, load_quad, forcing, tm.times[n],
                                   sys.tau, u0, v0, p0);
    Vector x = lu.solve(rhs);
    double r = scaled_residual(sys.A, x, rhs);
    res.max_residual = std::max(res.max_residual, r);
    if (r > 1e-8)
      throw SolverError("march: slab " + std::to_string(n) + " residual " + std::to_string(r));

    auto& un = res.u.nodes[n];
    auto& vn = res.v.nodes[n];
    auto& pn = res.p.nodes[n];
    un.resize(k + 1);
    vn.resize(k + 1);
    pn.resize(k + 1);
    un[0] = u0;
    vn[0] = v0;
    pn[0] = p0;
    for (int j = 1; j <= k; ++j) {
      un[j] = x.segment(sys.offset(0, j), n_u);
      vn[j] = x.segment(sys.offset(1, j), n_u);
      pn[j] = x.segment(sys.offset(2, j), n_p);
    }
    u0 = un[k];
    v0 = vn[k];
    p0 = pn[k];
  }
  return res;
}

}  // namespace stpe
