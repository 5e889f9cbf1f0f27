#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "assembly.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "timedisc.hpp"

using namespace stpe;

namespace {

MaterialParams benchmark_material() {
  return make_material(100.0, 0.35, 1.0, 0.9, 1e-3, 1e-2 * Mat2::Identity());
}

Vector random_constrained(const FESpace& space, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(space.n_dofs());
  for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
  zero_dirichlet(space, x);
  return x;
}

}  // namespace

TEST_CASE("mass matrices integrate the constant") {
  Mesh mesh = build_mesh(4);
  SpatialQuadrature quad = tensor_quadrature(3);
  FESpace Q(mesh, 2, 1);
  SparseMatrix M = assemble_mass(Q, quad);
  Vector one = Vector::Ones(Q.n_dofs());
  CHECK(one.dot(M * one) == doctest::Approx(1.0).epsilon(1e-13));

  FESpace V(mesh, 2, 2);
  SparseMatrix Mv = assemble_mass(V, quad);
  Vector onev = Vector::Ones(V.n_dofs());
  CHECK(onev.dot(Mv * onev) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("rigid motions lie in the kernel of the elasticity form") {
  Mesh mesh = build_mesh(3);
  FESpace V(mesh, 2, 2);
  SparseMatrix Ae = assemble_elasticity(V, benchmark_material(), tensor_quadrature(3));
  Vector shift = V.interpolate([](Vec2) { return Vec2(1.0, -2.0); });
  Vector rot = V.interpolate([](Vec2 x) { return Vec2(-x.y(), x.x()); });
  CHECK((Ae * shift).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((Ae * rot).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diffusion energy of the first laplace eigenfunction") {
  Mesh mesh = build_mesh(32);
  FESpace Q(mesh, 2, 1);
  Mat2 K = 1e-2 * Mat2::Identity();
  SparseMatrix Ap = assemble_diffusion(Q, K, tensor_quadrature(3));
  Vector p = Q.interpolate([](Vec2 x) {
    return std::sin(std::numbers::pi * x.x()) * std::sin(std::numbers::pi * x.y());
  });
  double exact = 1e-2 * std::numbers::pi * std::numbers::pi / 2.0;
  CHECK(p.dot(Ap * p) == doctest::Approx(exact).epsilon(2e-3));
}

TEST_CASE("coupling form equals the divergence pairing") {
  Mesh mesh = build_mesh(4);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  SparseMatrix B = assemble_coupling(V, Q, tensor_quadrature(3));
  Vector w = V.interpolate([](Vec2 x) { return Vec2(x.x() * x.x(), x.y() * x.y()); });
  Vector q = Q.interpolate([](Vec2 x) { return x.x() * x.y(); });
  // int (2x + 2y) x y over the unit square
  CHECK(w.dot(B * q) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("dirichlet elimination keeps the interior block intact") {
  Mesh mesh = build_mesh(3);
  FESpace Q(mesh, 1, 1);
  SparseMatrix raw = assemble_diffusion(Q, Mat2::Identity(), tensor_quadrature(2));
  SparseMatrix A = raw;
  apply_dirichlet(A, Q.dirichlet_dofs(), Q.dirichlet_dofs(), true);

  std::vector<bool> constrained(Q.n_dofs(), false);
  for (int d : Q.dirichlet_dofs()) constrained[d] = true;

  Matrix Ad = Matrix(A), Rd = Matrix(raw);
  for (int i = 0; i < Q.n_dofs(); ++i)
    for (int j = 0; j < Q.n_dofs(); ++j) {
      if (!constrained[i] && !constrained[j])
        CHECK(Ad(i, j) == doctest::Approx(Rd(i, j)).epsilon(1e-14));
      else if (i == j)
        CHECK(Ad(i, j) == doctest::Approx(1.0).epsilon(1e-14));
      else
        CHECK(Ad(i, j) == 0.0);
    }
}

TEST_CASE("operator blocks zero all constrained coupling rows") {
  Mesh mesh = build_mesh(3);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  OperatorBlocks blocks = assemble_blocks(V, Q, benchmark_material(), tensor_quadrature(3));
  CHECK(blocks.n_u == V.n_dofs());
  CHECK(blocks.n_p == Q.n_dofs());
  CHECK(blocks.B.rows() == V.n_dofs());
  CHECK(blocks.B.cols() == Q.n_dofs());

  Matrix Bd = Matrix(blocks.B);
  for (int d : V.dirichlet_dofs()) CHECK(Bd.row(d).cwiseAbs().maxCoeff() == 0.0);
  for (int d : Q.dirichlet_dofs()) CHECK(Bd.col(d).cwiseAbs().maxCoeff() == 0.0);
}

// The slab matrix must act exactly like the block formula
//   u-row: sum_j G(m,j) Mu U_j - tau/2 H(m,j) Mu V_j
//   v-row: sum_j rho G(m,j) Mu V_j + tau/2 H(m,j) (Ae U_j - alpha B P_j)
//   p-row: sum_j c0 G(m,j) Mp P_j + tau/2 H(m,j) (Ap P_j + alpha B^T V_j).
TEST_CASE("slab system reproduces the block formula") {
  Mesh mesh = build_mesh(3);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  MaterialParams mat = benchmark_material();
  OperatorBlocks blocks = assemble_blocks(V, Q, mat, tensor_quadrature(3));
  SlabBasis basis = make_slab_basis(2);
  double tau = 0.05;
  SlabSystem sys = build_slab_system(blocks, basis, mat, tau);
  const int k = 2, n_u = blocks.n_u, n_p = blocks.n_p;
  REQUIRE(sys.n_unknowns() == k * (2 * n_u + n_p));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(sys.n_unknowns());
  for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
  Vector got = sys.A * x;

  auto U = [&](int j) { return x.segment(sys.offset(0, j), n_u); };
  auto Vj = [&](int j) { return x.segment(sys.offset(1, j), n_u); };
  auto P = [&](int j) { return x.segment(sys.offset(2, j), n_p); };

  Vector want = Vector::Zero(sys.n_unknowns());
  for (int m = 0; m < k; ++m) {
    for (int j = 1; j <= k; ++j) {
      double g = basis.G(m, j), h = 0.5 * tau * basis.H(m, j);
      want.segment(m * n_u, n_u) += g * (blocks.Mu * U(j)) - h * (blocks.Mu * Vj(j));
      want.segment(k * n_u + m * n_u, n_u) += mat.rho * g * (blocks.Mu * Vj(j)) +
                                              h * (blocks.Ae * U(j)) -
                                              mat.alpha * h * (blocks.B * P(j));
      want.segment(2 * k * n_u + m * n_p, n_p) += mat.c0 * g * (blocks.Mp * P(j)) +
                                                  h * (blocks.Ap * P(j)) +
                                                  mat.alpha * h * (blocks.B.transpose() * Vj(j));
    }
  }
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("slab right-hand side carries initial data and load moments") {
  Mesh mesh = build_mesh(3);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  MaterialParams mat = benchmark_material();
  SpatialQuadrature quad = tensor_quadrature(3);
  OperatorBlocks blocks = assemble_blocks(V, Q, mat, quad);
  SlabBasis basis = make_slab_basis(2);
  double tau = 0.1;
  const int k = 2, n_u = blocks.n_u, n_p = blocks.n_p;

  std::mt19937 rng(5);
  Vector u0 = random_constrained(V, rng);
  Vector v0 = random_constrained(V, rng);
  Vector p0 = random_constrained(Q, rng);

  Forcing none{[](Vec2, double) { return Vec2::Zero().eval(); },
               [](Vec2, double) { return 0.0; }};
  Vector rhs = assemble_slab_rhs(blocks, basis, mat, V, Q, quad, none, 0.0, tau, u0, v0, p0);

  Vector want = Vector::Zero(k * (2 * n_u + n_p));
  for (int m = 0; m < k; ++m) {
    double g0 = basis.G(m, 0), h0 = 0.5 * tau * basis.H(m, 0);
    want.segment(m * n_u, n_u) = -g0 * (blocks.Mu * u0) + h0 * (blocks.Mu * v0);
    want.segment(k * n_u + m * n_u, n_u) = -mat.rho * g0 * (blocks.Mu * v0) -
                                           h0 * (blocks.Ae * u0) +
                                           mat.alpha * h0 * (blocks.B * p0);
    want.segment(2 * k * n_u + m * n_p, n_p) = -mat.c0 * g0 * (blocks.Mp * p0) -
                                               h0 * (blocks.Ap * p0) -
                                               mat.alpha * h0 * (blocks.B.transpose() * v0);
  }
  CHECK((rhs - want).cwiseAbs().maxCoeff() < 1e-10 * want.cwiseAbs().maxCoeff());

  // Constant-in-time load: only the P_0 moment survives, with weight rho*tau.
  Forcing constant{[](Vec2, double) { return Vec2(1.0, 0.0); },
                   [](Vec2, double) { return 0.0; }};
  Vector rhs_f = assemble_slab_rhs(blocks, basis, mat, V, Q, quad, constant, 0.0, tau,
                                   Vector::Zero(n_u), Vector::Zero(n_u), Vector::Zero(n_p));
  Vector load = assemble_vector_load(V, quad, [](Vec2) { return Vec2(1.0, 0.0); });
  zero_dirichlet(V, load);
  CHECK((rhs_f.segment(k * n_u, n_u) - mat.rho * tau * load).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(rhs_f.segment(k * n_u + n_u, n_u).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(rhs_f.segment(0, k * n_u).cwiseAbs().maxCoeff() == 0.0);
  CHECK(rhs_f.segment(2 * k * n_u, k * n_p).cwiseAbs().maxCoeff() == 0.0);
}
