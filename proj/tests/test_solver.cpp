#include <random>

#include <doctest.h>

#include "assembly.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "solver.hpp"

using namespace stpe;

TEST_CASE("sparse LU solves an SPD system to machine accuracy") {
  Mesh mesh = build_mesh(8);
  FESpace Q(mesh, 1, 1);
  SparseMatrix A = assemble_diffusion(Q, Mat2::Identity(), tensor_quadrature(2));
  SparseMatrix M = assemble_mass(Q, tensor_quadrature(2));
  A = A + M;  // strictly positive definite, no constraints needed

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector b(Q.n_dofs());
  for (int i = 0; i < b.size(); ++i) b[i] = dist(rng);

  LUSolver lu(A);
  Vector x = lu.solve(b);
  CHECK(scaled_residual(A, x, b) < 1e-12);

  LUSolver moved = std::move(lu);
  Vector y = moved.solve(b);
  CHECK((x - y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("singular matrices are rejected with a diagnostic") {
  SparseMatrix A(3, 3);
  A.insert(0, 0) = 1.0;
  A.insert(1, 1) = 2.0;  // row and column 2 stay empty
  A.makeCompressed();
  CHECK_THROWS_AS(LUSolver{A}, SolverError);
  try {
    LUSolver lu(A);
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("factorization") != std::string::npos);
  }
}

// The mixed pair (vector order 3, scalar order 2) must capture a solution
// whose displacement profile is genuinely cubic per axis and whose pressure
// is quadratic, with P2 time factors: everything lies in the trial spaces,
// so the march reproduces it to solver roundoff. This exercises the coupling
// block between spaces of different order, which the equal-order tests miss.
TEST_CASE("mixed-pair march reproduces an in-space polynomial solution") {
  MaterialParams mat = make_material(100.0, 0.35, 1.0, 0.9, 1e-3, 1e-2 * Mat2::Identity());
  Mesh mesh = build_mesh(4);
  FESpace V(mesh, 3, 2);
  FESpace Q(mesh, 2, 1);
  SpatialQuadrature quad = tensor_quadrature(6);
  OperatorBlocks blocks = assemble_blocks(V, Q, mat, quad);
  TimeMesh tm = build_time_mesh(0.2, 0.1, 0);
  SlabBasis basis = make_slab_basis(2);
  SlabSystem sys = build_slab_system(blocks, basis, mat, tm.tau(0));

  // c(s) = s^2(1-s) is cubic with c(0) = c(1) = 0; b(s) = s(1-s).
  auto c = [](double s) { return s * s * (1.0 - s); };
  auto dc = [](double s) { return 2.0 * s - 3.0 * s * s; };
  auto ddc = [](double s) { return 2.0 - 6.0 * s; };
  auto b = [](double s) { return s * (1.0 - s); };
  auto db = [](double s) { return 1.0 - 2.0 * s; };
  auto T = [](double t) { return t + t * t; };
  auto dT = [](double t) { return 1.0 + 2.0 * t; };
  auto P = [](double t) { return 1.0 - t + t * t; };
  auto dP = [](double t) { return -1.0 + 2.0 * t; };

  auto w = [&](Vec2 x) { return c(x.x()) * c(x.y()); };
  auto q = [&](Vec2 x) { return b(x.x()) * b(x.y()); };

  // Strong-form loads for u = T w (1,1), v = dt u, p = P q.
  auto f_exact = [&](Vec2 x, double t) {
    double wxx = ddc(x.x()) * c(x.y());
    double wyy = c(x.x()) * ddc(x.y());
    double wxy = dc(x.x()) * dc(x.y());
    double div1 = mat.mu * (wxx + wyy) + (mat.lambda + mat.mu) * (wxx + wxy);
    double div2 = mat.mu * (wxx + wyy) + (mat.lambda + mat.mu) * (wyy + wxy);
    Vec2 gp(db(x.x()) * b(x.y()), b(x.x()) * db(x.y()));
    double acc = mat.rho * 2.0 * w(x);
    return Vec2(acc - T(t) * div1 + mat.alpha * P(t) * gp.x(),
                acc - T(t) * div2 + mat.alpha * P(t) * gp.y());
  };
  auto g_exact = [&](Vec2 x, double t) {
    double divu = dc(x.x()) * c(x.y()) + c(x.x()) * dc(x.y());
    double lapq = -2.0 * b(x.y()) - 2.0 * b(x.x());
    return mat.c0 * dP(t) * q(x) + mat.alpha * dT(t) * divu - P(t) * mat.K(0, 0) * lapq;
  };

  Vector u0 = V.interpolate([&](Vec2 x) { return Vec2(T(0.0) * w(x), T(0.0) * w(x)); });
  Vector v0 = V.interpolate([&](Vec2 x) { return Vec2(dT(0.0) * w(x), dT(0.0) * w(x)); });
  Vector p0 = Q.interpolate([&](Vec2 x) { return P(0.0) * q(x); });

  Forcing forcing{f_exact, g_exact};
  MarchResult res = march(blocks, sys, basis, V, Q, quad, mat, forcing, tm, std::move(u0),
                          std::move(v0), std::move(p0));

  double dev = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n)
    for (int j = 0; j <= basis.k; ++j) {
      double t = tm.from_ref(n, basis.trial.nodes()[j]);
      Vector ue = V.interpolate([&](Vec2 x) { return Vec2(T(t) * w(x), T(t) * w(x)); });
      Vector ve = V.interpolate([&](Vec2 x) { return Vec2(dT(t) * w(x), dT(t) * w(x)); });
      Vector pe = Q.interpolate([&](Vec2 x) { return P(t) * q(x); });
      dev = std::max(dev, (res.u.nodes[n][j] - ue).cwiseAbs().maxCoeff());
      dev = std::max(dev, (res.v.nodes[n][j] - ve).cwiseAbs().maxCoeff());
      dev = std::max(dev, (res.p.nodes[n][j] - pe).cwiseAbs().maxCoeff());
    }
  CHECK(dev < 1e-12);
}

TEST_CASE("march keeps the zero solution and checks the slab length") {
  Mesh mesh = build_mesh(2);
  FESpace V(mesh, 1, 2);
  FESpace Q(mesh, 1, 1);
  MaterialParams mat = make_material(100.0, 0.35, 1.0, 0.9, 1e-3, 1e-2 * Mat2::Identity());
  SpatialQuadrature quad = tensor_quadrature(2);
  OperatorBlocks blocks = assemble_blocks(V, Q, mat, quad);
  SlabBasis basis = make_slab_basis(1);
  TimeMesh tm = build_time_mesh(0.3, 0.1, 0);
  SlabSystem sys = build_slab_system(blocks, basis, mat, tm.tau(0));

  Forcing none{[](Vec2, double) { return Vec2(0.0, 0.0); }, [](Vec2, double) { return 0.0; }};
  MarchResult res = march(blocks, sys, basis, V, Q, quad, mat, none, tm,
                          Vector::Zero(V.n_dofs()), Vector::Zero(V.n_dofs()),
                          Vector::Zero(Q.n_dofs()));
  REQUIRE(res.u.n_slabs() == 3);
  for (int n = 0; n < 3; ++n)
    for (int j = 0; j <= 1; ++j) {
      CHECK(res.u.nodes[n][j].cwiseAbs().maxCoeff() == 0.0);
      CHECK(res.v.nodes[n][j].cwiseAbs().maxCoeff() == 0.0);
      CHECK(res.p.nodes[n][j].cwiseAbs().maxCoeff() == 0.0);
    }
  CHECK(res.max_residual == 0.0);

  TimeMesh other = build_time_mesh(0.3, 0.15, 0);
  CHECK_THROWS_AS(march(blocks, sys, basis, V, Q, quad, mat, none, other,
                        Vector::Zero(V.n_dofs()), Vector::Zero(V.n_dofs()),
                        Vector::Zero(Q.n_dofs())),
                  SolverError);
}
