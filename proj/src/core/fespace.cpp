#include "fespace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stpe {

namespace {

std::vector<double> reference_nodes(int order) {
  // Gauss-Lobatto points mapped to [0,1]; endpoints pinned exactly so that
  // lattice coordinates at cell interfaces agree bit-for-bit.
  Quadrature1D gl = gauss_lobatto(order);
  std::vector<double> nodes(order + 1);
  for (int i = 0; i <= order; ++i) nodes[i] = 0.5 * (gl.points[i] + 1.0);
  nodes[0] = 0.0;
  nodes[order] = 1.0;
  return nodes;
}

}  // namespace

FESpace::FESpace(const Mesh& mesh, int order, int components)
    : mesh_(mesh),
      order_(order),
      components_(components),
      nodes_per_side_(order * mesh.cells_per_side + 1),
      basis1d_(reference_nodes(order)),
      ref_nodes_(basis1d_.nodes()) {
  if (order < 1) throw std::invalid_argument("FESpace: order must be >= 1");
  if (components != 1 && components != 2)
    throw std::invalid_argument("FESpace: components must be 1 or 2");
  int n_sc = n_scalar_dofs();
  for (int c = 0; c < components_; ++c) {
    for (int s = 0; s < n_sc; ++s) {
      if (is_boundary_node(s)) dirichlet_.push_back(c * n_sc + s);
    }
  }
}

Vec2 FESpace::node_coord(int scalar_dof) const {
  int gx = scalar_dof % nodes_per_side_;
  int gy = scalar_dof / nodes_per_side_;
  int n = mesh_.cells_per_side;
  auto coord = [&](int g) {
    int q = g / order_;
    int rem = g % order_;
    return (q + ref_nodes_[rem]) / n;
  };
  return {coord(gx), coord(gy)};
}

bool FESpace::is_boundary_node(int scalar_dof) const {
  int gx = scalar_dof % nodes_per_side_;
  int gy = scalar_dof / nodes_per_side_;
  return gx == 0 || gx == nodes_per_side_ - 1 || gy == 0 || gy == nodes_per_side_ - 1;
}

int FESpace::cell_scalar_dof(int cell, int local) const {
  int cx = cell % mesh_.cells_per_side;
  int cy = cell / mesh_.cells_per_side;
  int a = local % (order_ + 1);
  int b = local / (order_ + 1);
  return (cy * order_ + b) * nodes_per_side_ + cx * order_ + a;
}

void FESpace::cell_dofs(int cell, std::vector<int>& out) const {
  out.resize(n_local());
  int n_sc = n_scalar_dofs();
  int nls = n_local_scalar();
  for (int l = 0; l < nls; ++l) {
    int g = cell_scalar_dof(cell, l);
    for (int c = 0; c < components_; ++c) out[c * nls + l] = c * n_sc + g;
  }
}

FESpace::BasisPoint FESpace::eval_basis(Vec2 ref_point) const {
  int n1 = order_ + 1;
  std::vector<double> vx(n1), vy(n1), dx(n1), dy(n1);
  basis1d_.values(ref_point.x(), vx.data());
  basis1d_.values(ref_point.y(), vy.data());
  basis1d_.derivs(ref_point.x(), dx.data());
  basis1d_.derivs(ref_point.y(), dy.data());
  BasisPoint out;
  out.val.resize(n_local_scalar());
  out.grad.resize(n_local_scalar(), 2);
  for (int b = 0; b < n1; ++b) {
    for (int a = 0; a < n1; ++a) {
      int l = b * n1 + a;
      out.val[l] = vx[a] * vy[b];
      out.grad(l, 0) = dx[a] * vy[b];
      out.grad(l, 1) = vx[a] * dy[b];
    }
  }
  return out;
}

FESpace::BasisTable FESpace::tabulate(const SpatialQuadrature& quad) const {
  BasisTable t;
  int nq = quad.size();
  int nl = n_local_scalar();
  t.val.resize(nq, nl);
  t.dx.resize(nq, nl);
  t.dy.resize(nq, nl);
  for (int q = 0; q < nq; ++q) {
    BasisPoint bp = eval_basis({quad.x[q], quad.y[q]});
    for (int l = 0; l < nl; ++l) {
      t.val(q, l) = bp.val[l];
      t.dx(q, l) = bp.grad(l, 0);
      t.dy(q, l) = bp.grad(l, 1);
    }
  }
  return t;
}

Vector FESpace::interpolate(const std::function<double(Vec2)>& f) const {
  if (components_ != 1) throw std::invalid_argument("interpolate: scalar space required");
  Vector out(n_dofs());
  for (int s = 0; s < n_scalar_dofs(); ++s) out[s] = f(node_coord(s));
  return out;
}

Vector FESpace::interpolate(const std::function<Vec2(Vec2)>& f) const {
  if (components_ != 2) throw std::invalid_argument("interpolate: vector space required");
  int n_sc = n_scalar_dofs();
  Vector out(n_dofs());
  for (int s = 0; s < n_sc; ++s) {
    Vec2 v = f(node_coord(s));
    out[s] = v.x();
    out[n_sc + s] = v.y();
  }
  return out;
}

int FESpace::cell_containing(Vec2 x, Vec2& ref) const {
  int n = mesh_.cells_per_side;
  int cx = std::clamp(static_cast<int>(std::floor(x.x() * n)), 0, n - 1);
  int cy = std::clamp(static_cast<int>(std::floor(x.y() * n)), 0, n - 1);
  ref = {x.x() * n - cx, x.y() * n - cy};
  return cy * n + cx;
}

double FESpace::value_scalar(const Vector& coeffs, Vec2 x) const {
  Vec2 ref;
  int cell = cell_containing(x, ref);
  BasisPoint bp = eval_basis(ref);
  double s = 0.0;
  for (int l = 0; l < n_local_scalar(); ++l) s += coeffs[cell_scalar_dof(cell, l)] * bp.val[l];
  return s;
}

Vec2 FESpace::gradient_scalar(const Vector& coeffs, Vec2 x) const {
  Vec2 ref;
  int cell = cell_containing(x, ref);
  BasisPoint bp = eval_basis(ref);
  double n = mesh_.cells_per_side;
  Vec2 g = Vec2::Zero();
  for (int l = 0; l < n_local_scalar(); ++l) {
    double c = coeffs[cell_scalar_dof(cell, l)];
    g.x() += c * bp.grad(l, 0);
    g.y() += c * bp.grad(l, 1);
  }
  return n * g;
}

Vec2 FESpace::value_vector(const Vector& coeffs, Vec2 x) const {
  Vec2 ref;
  int cell = cell_containing(x, ref);
  BasisPoint bp = eval_basis(ref);
  int n_sc = n_scalar_dofs();
  Vec2 out = Vec2::Zero();
  for (int l = 0; l < n_local_scalar(); ++l) {
    int g = cell_scalar_dof(cell, l);
    out.x() += coeffs[g] * bp.val[l];
    out.y() += coeffs[n_sc + g] * bp.val[l];
  }
  return out;
}

void zero_dirichlet(const FESpace& space, Vector& x) {
  for (int d : space.dirichlet_dofs()) x[d] = 0.0;
}

Mat2 FESpace::jacobian_vector(const Vector& coeffs, Vec2 x) const {
  Vec2 ref;
  int cell = cell_containing(x, ref);
  BasisPoint bp = eval_basis(ref);
  int n_sc = n_scalar_dofs();
  double n = mesh_.cells_per_side;
  Mat2 jac = Mat2::Zero();
  for (int l = 0; l < n_local_scalar(); ++l) {
    int g = cell_scalar_dof(cell, l);
    for (int c = 0; c < 2; ++c) {
      double coef = coeffs[c * n_sc + g];
      jac(c, 0) += coef * bp.grad(l, 0);
      jac(c, 1) += coef * bp.grad(l, 1);
    }
  }
  return n * jac;
}

}  // namespace stpe
