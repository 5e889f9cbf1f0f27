#include "assembly.hpp"

#include <stdexcept>

namespace stpe {

namespace {

// Strain of the local vector basis function (component c, scalar shape l)
// from its physical gradient g.
Mat2 basis_strain(int c, const Vec2& g) {
  Mat2 e;
  if (c == 0)
    e << g.x(), 0.5 * g.y(), 0.5 * g.y(), 0.0;
  else
    e << 0.0, 0.5 * g.x(), 0.5 * g.x(), g.y();
  return e;
}

void zero_dofs(Vector& x, const std::vector<int>& dofs) {
  for (int d : dofs) x[d] = 0.0;
}

}  // namespace

SparseMatrix assemble_mass(const FESpace& space, const SpatialQuadrature& quad) {
  auto tab = space.tabulate(quad);
  int nl = space.n_local_scalar();
  double area = space.mesh().cell_side() * space.mesh().cell_side();
  Matrix el = Matrix::Zero(nl, nl);
  for (int q = 0; q < quad.size(); ++q) {
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nl; ++j) el(i, j) += quad.w[q] * tab.val(q, i) * tab.val(q, j);
  }
  el *= area;

  int n_sc = space.n_scalar_dofs();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(space.mesh().n_cells()) * nl * nl * space.components());
  for (int cell = 0; cell < space.mesh().n_cells(); ++cell) {
    for (int c = 0; c < space.components(); ++c) {
      for (int i = 0; i < nl; ++i) {
        int gi = c * n_sc + space.cell_scalar_dof(cell, i);
        for (int j = 0; j < nl; ++j) {
          int gj = c * n_sc + space.cell_scalar_dof(cell, j);
          trips.emplace_back(gi, gj, el(i, j));
        }
      }
    }
  }
  SparseMatrix A(space.n_dofs(), space.n_dofs());
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

SparseMatrix assemble_elasticity(const FESpace& V, const MaterialParams& mat,
                                 const SpatialQuadrature& quad) {
  if (V.components() != 2) throw std::invalid_argument("assemble_elasticity: vector space required");
  auto tab = V.tabulate(quad);
  int nl = V.n_local_scalar();
  int nv = 2 * nl;
  double n = V.mesh().cells_per_side;
  double area = V.mesh().cell_side() * V.mesh().cell_side();
  Matrix el = Matrix::Zero(nv, nv);
  std::vector<Mat2> strain(nv), stress(nv);
  for (int q = 0; q < quad.size(); ++q) {
    for (int c = 0; c < 2; ++c) {
      for (int l = 0; l < nl; ++l) {
        Vec2 g = n * Vec2(tab.dx(q, l), tab.dy(q, l));
        strain[c * nl + l] = basis_strain(c, g);
        stress[c * nl + l] = mat.stress(strain[c * nl + l]);
      }
    }
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        el(i, j) += quad.w[q] * area * stress[j].cwiseProduct(strain[i]).sum();
  }

  std::vector<int> dofs;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(V.mesh().n_cells()) * nv * nv);
  for (int cell = 0; cell < V.mesh().n_cells(); ++cell) {
    V.cell_dofs(cell, dofs);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) trips.emplace_back(dofs[i], dofs[j], el(i, j));
  }
  SparseMatrix A(V.n_dofs(), V.n_dofs());
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

SparseMatrix assemble_diffusion(const FESpace& Q, const Mat2& K, const SpatialQuadrature& quad) {
  if (Q.components() != 1) throw std::invalid_argument("assemble_diffusion: scalar space required");
  auto tab = Q.tabulate(quad);
  int nl = Q.n_local_scalar();
  double n = Q.mesh().cells_per_side;
  double area = Q.mesh().cell_side() * Q.mesh().cell_side();
  Matrix el = Matrix::Zero(nl, nl);
  for (int q = 0; q < quad.size(); ++q) {
    for (int i = 0; i < nl; ++i) {
      Vec2 gi = n * Vec2(tab.dx(q, i), tab.dy(q, i));
      for (int j = 0; j < nl; ++j) {
        Vec2 gj = n * Vec2(tab.dx(q, j), tab.dy(q, j));
        el(i, j) += quad.w[q] * area * gi.dot(K * gj);
      }
    }
  }

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(Q.mesh().n_cells()) * nl * nl);
  for (int cell = 0; cell < Q.mesh().n_cells(); ++cell) {
    for (int i = 0; i < nl; ++i) {
      int gi = Q.cell_scalar_dof(cell, i);
      for (int j = 0; j < nl; ++j)
        trips.emplace_back(gi, Q.cell_scalar_dof(cell, j), el(i, j));
    }
  }
  SparseMatrix A(Q.n_dofs(), Q.n_dofs());
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

SparseMatrix assemble_coupling(const FESpace& V, const FESpace& Q, const SpatialQuadrature& quad) {
  if (V.components() != 2 || Q.components() != 1)
    throw std::invalid_argument("assemble_coupling: vector and scalar space required");
  if (V.mesh().cells_per_side != Q.mesh().cells_per_side)
    throw std::invalid_argument("assemble_coupling: spaces live on different meshes");
  auto tv = V.tabulate(quad);
  auto tq = Q.tabulate(quad);
  int nlv = V.n_local_scalar();
  int nlq = Q.n_local_scalar();
  double n = V.mesh().cells_per_side;
  double area = V.mesh().cell_side() * V.mesh().cell_side();
  // el(c*nlv + l, lp) = int psi_lp d_c phi_l over one cell
  Matrix el = Matrix::Zero(2 * nlv, nlq);
  for (int q = 0; q < quad.size(); ++q) {
    for (int l = 0; l < nlv; ++l) {
      double dx = n * tv.dx(q, l);
      double dy = n * tv.dy(q, l);
      for (int lp = 0; lp < nlq; ++lp) {
        double w = quad.w[q] * area * tq.val(q, lp);
        el(l, lp) += w * dx;
        el(nlv + l, lp) += w * dy;
      }
    }
  }

  int n_sc = V.n_scalar_dofs();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(V.mesh().n_cells()) * 2 * nlv * nlq);
  for (int cell = 0; cell < V.mesh().n_cells(); ++cell) {
    for (int c = 0; c < 2; ++c) {
      for (int l = 0; l < nlv; ++l) {
        int gi = c * n_sc + V.cell_scalar_dof(cell, l);
        for (int lp = 0; lp < nlq; ++lp)
          trips.emplace_back(gi, Q.cell_scalar_dof(cell, lp), el(c * nlv + l, lp));
      }
    }
  }
  SparseMatrix B(V.n_dofs(), Q.n_dofs());
  B.setFromTriplets(trips.begin(), trips.end());
  B.makeCompressed();
  return B;
}

Vector assemble_vector_load(const FESpace& V, const SpatialQuadrature& quad,
                            const std::function<Vec2(Vec2)>& f) {
  auto tab = V.tabulate(quad);
  int nl = V.n_local_scalar();
  int n_sc = V.n_scalar_dofs();
  double side = V.mesh().cell_side();
  double area = side * side;
  Vector load = Vector::Zero(V.n_dofs());
  for (int cell = 0; cell < V.mesh().n_cells(); ++cell) {
    Vec2 origin = V.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      Vec2 fx = area * quad.w[q] * f(x);
      for (int l = 0; l < nl; ++l) {
        int g = V.cell_scalar_dof(cell, l);
        load[g] += fx.x() * tab.val(q, l);
        load[n_sc + g] += fx.y() * tab.val(q, l);
      }
    }
  }
  return load;
}

Vector assemble_scalar_load(const FESpace& Q, const SpatialQuadrature& quad,
                            const std::function<double(Vec2)>& f) {
  auto tab = Q.tabulate(quad);
  int nl = Q.n_local_scalar();
  double side = Q.mesh().cell_side();
  double area = side * side;
  Vector load = Vector::Zero(Q.n_dofs());
  for (int cell = 0; cell < Q.mesh().n_cells(); ++cell) {
    Vec2 origin = Q.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      double fx = area * quad.w[q] * f(x);
      for (int l = 0; l < nl; ++l) load[Q.cell_scalar_dof(cell, l)] += fx * tab.val(q, l);
    }
  }
  return load;
}

Vector assemble_elasticity_load(const FESpace& V, const MaterialParams& mat,
                                const SpatialQuadrature& quad,
                                const std::function<Mat2(Vec2)>& jacobian) {
  auto tab = V.tabulate(quad);
  int nl = V.n_local_scalar();
  int n_sc = V.n_scalar_dofs();
  double side = V.mesh().cell_side();
  double area = side * side;
  double n = V.mesh().cells_per_side;
  Vector load = Vector::Zero(V.n_dofs());
  for (int cell = 0; cell < V.mesh().n_cells(); ++cell) {
    Vec2 origin = V.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      Mat2 jac = jacobian(x);
      Mat2 sigma = area * quad.w[q] * mat.stress(0.5 * (jac + jac.transpose()));
      for (int c = 0; c < 2; ++c) {
        for (int l = 0; l < nl; ++l) {
          Vec2 g = n * Vec2(tab.dx(q, l), tab.dy(q, l));
          load[c * n_sc + V.cell_scalar_dof(cell, l)] +=
              sigma.cwiseProduct(basis_strain(c, g)).sum();
        }
      }
    }
  }
  return load;
}

Vector assemble_diffusion_load(const FESpace& Q, const Mat2& K, const SpatialQuadrature& quad,
                               const std::function<Vec2(Vec2)>& gradient) {
  auto tab = Q.tabulate(quad);
  int nl = Q.n_local_scalar();
  double side = Q.mesh().cell_side();
  double area = side * side;
  double n = Q.mesh().cells_per_side;
  Vector load = Vector::Zero(Q.n_dofs());
  for (int cell = 0; cell < Q.mesh().n_cells(); ++cell) {
    Vec2 origin = Q.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      Vec2 kg = area * quad.w[q] * (K * gradient(x));
      for (int l = 0; l < nl; ++l) {
        Vec2 g = n * Vec2(tab.dx(q, l), tab.dy(q, l));
        load[Q.cell_scalar_dof(cell, l)] += kg.dot(g);
      }
    }
  }
  return load;
}

void apply_dirichlet(SparseMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols,
                     bool unit_diagonal) {
  std::vector<char> rmask(A.rows(), 0), cmask(A.cols(), 0);
  for (int r : rows) rmask[r] = 1;
  for (int c : cols) cmask[c] = 1;
  for (int o = 0; o < A.outerSize(); ++o) {
    for (SparseMatrix::InnerIterator it(A, o); it; ++it) {
      if (rmask[it.row()] || cmask[it.col()]) it.valueRef() = 0.0;
    }
  }
  A.prune([](const int&, const int&, const double& v) { return v != 0.0; });
  if (unit_diagonal) {
    for (int r : rows) A.coeffRef(r, r) = 1.0;
  }
  A.makeCompressed();
}

OperatorBlocks assemble_blocks(const FESpace& V, const FESpace& Q, const MaterialParams& mat,
                               const SpatialQuadrature& quad) {
  OperatorBlocks b;
  b.n_u = V.n_dofs();
  b.n_p = Q.n_dofs();
  b.Mu = assemble_mass(V, quad);
  b.Mp = assemble_mass(Q, quad);
  b.Ae = assemble_elasticity(V, mat, quad);
  b.Ap = assemble_diffusion(Q, mat.K, quad);
  b.B = assemble_coupling(V, Q, quad);
  const auto& dv = V.dirichlet_dofs();
  const auto& dq = Q.dirichlet_dofs();
  apply_dirichlet(b.Mu, dv, dv, true);
  apply_dirichlet(b.Mp, dq, dq, true);
  apply_dirichlet(b.Ae, dv, dv, true);
  apply_dirichlet(b.Ap, dq, dq, true);
  apply_dirichlet(b.B, dv, dq, false);
  return b;
}

int SlabSystem::offset(int field, int node) const {
  int base = field == 0 ? 0 : (field == 1 ? k * n_u : 2 * k * n_u);
  int size = field == 2 ? n_p : n_u;
  return base + (node - 1) * size;
}

SlabSystem build_slab_system(const OperatorBlocks& blocks, const SlabBasis& basis,
                             const MaterialParams& mat, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("build_slab_system: tau must be positive");
  SlabSystem sys;
  sys.k = basis.k;
  sys.n_u = blocks.n_u;
  sys.n_p = blocks.n_p;
  sys.tau = tau;
  int k = basis.k;

  SparseMatrix Bt = blocks.B.transpose();
  std::vector<Triplet> trips;
  size_t per_pair = 2 * blocks.Mu.nonZeros() + blocks.Ae.nonZeros() + blocks.Ap.nonZeros() +
                    blocks.Mp.nonZeros() + 2 * blocks.B.nonZeros();
  trips.reserve(per_pair * k * k);
  auto add = [&trips](const SparseMatrix& M, int r0, int c0, double s) {
    if (s == 0.0) return;
    for (int o = 0; o < M.outerSize(); ++o)
      for (SparseMatrix::InnerIterator it(M, o); it; ++it)
        trips.emplace_back(r0 + it.row(), c0 + it.col(), s * it.value());
  };

  int row_u = 0, row_v = k * sys.n_u, row_p = 2 * k * sys.n_u;
  for (int m = 0; m < k; ++m) {
    for (int j = 1; j <= k; ++j) {
      double g = basis.G(m, j);
      double h = 0.5 * tau * basis.H(m, j);
      add(blocks.Mu, row_u + m * sys.n_u, sys.offset(0, j), g);
      add(blocks.Mu, row_u + m * sys.n_u, sys.offset(1, j), -h);
      add(blocks.Mu, row_v + m * sys.n_u, sys.offset(1, j), mat.rho * g);
      add(blocks.Ae, row_v + m * sys.n_u, sys.offset(0, j), h);
      add(blocks.B, row_v + m * sys.n_u, sys.offset(2, j), -mat.alpha * h);
      add(blocks.Mp, row_p + m * sys.n_p, sys.offset(2, j), mat.c0 * g);
      add(blocks.Ap, row_p + m * sys.n_p, sys.offset(2, j), h);
      add(Bt, row_p + m * sys.n_p, sys.offset(1, j), mat.alpha * h);
    }
  }
  sys.A.resize(sys.n_unknowns(), sys.n_unknowns());
  sys.A.setFromTriplets(trips.begin(), trips.end());
  sys.A.makeCompressed();
  return sys;
}

Vector assemble_slab_rhs(const OperatorBlocks& blocks, const SlabBasis& basis,
                         const MaterialParams& mat, const FESpace& V, const FESpace& Q,
                         const SpatialQuadrature& quad, const Forcing& forcing, double t_left,
                         double tau, const Vector& u0, const Vector& v0, const Vector& p0) {
  int k = basis.k;
  int n_u = blocks.n_u, n_p = blocks.n_p;
  Vector rhs = Vector::Zero(k * (2 * n_u + n_p));

  // Loads at the Gauss-Lobatto times of the slab.
  std::vector<Vector> lf(k + 1), lg(k + 1);
  for (int mu = 0; mu <= k; ++mu) {
    double t = t_left + 0.5 * (basis.rule.points[mu] + 1.0) * tau;
    lf[mu] = assemble_vector_load(V, quad, [&](Vec2 x) { return forcing.f(x, t); });
    lg[mu] = assemble_scalar_load(Q, quad, [&](Vec2 x) { return forcing.g(x, t); });
    zero_dofs(lf[mu], V.dirichlet_dofs());
    zero_dofs(lg[mu], Q.dirichlet_dofs());
  }

  // Known left-endpoint terms, hoisted out of the test-function loop.
  Vector Mu_u0 = blocks.Mu * u0;
  Vector Mu_v0 = blocks.Mu * v0;
  Vector Ae_u0 = blocks.Ae * u0;
  Vector B_p0 = blocks.B * p0;
  Vector Mp_p0 = blocks.Mp * p0;
  Vector Ap_p0 = blocks.Ap * p0;
  Vector Bt_v0 = blocks.B.transpose() * v0;

  int row_u = 0, row_v = k * n_u, row_p = 2 * k * n_u;
  for (int m = 0; m < k; ++m) {
    Vector fm = Vector::Zero(n_u);
    Vector gm = Vector::Zero(n_p);
    for (int mu = 0; mu <= k; ++mu) {
      double w = basis.rule.weights[mu] * basis.test_val(m, mu);
      fm += w * lf[mu];
      gm += w * lg[mu];
    }
    fm *= 0.5 * tau * mat.rho;
    gm *= 0.5 * tau;

    double g0 = basis.G(m, 0);
    double h0 = 0.5 * tau * basis.H(m, 0);
    rhs.segment(row_u + m * n_u, n_u) = -g0 * Mu_u0 + h0 * Mu_v0;
    rhs.segment(row_v + m * n_u, n_u) =
        fm - mat.rho * g0 * Mu_v0 - h0 * Ae_u0 + mat.alpha * h0 * B_p0;
    rhs.segment(row_p + m * n_p, n_p) =
        gm - mat.c0 * g0 * Mp_p0 - mat.alpha * h0 * Bt_v0 - h0 * Ap_p0;
  }
  return rhs;
}

}  // namespace stpe
