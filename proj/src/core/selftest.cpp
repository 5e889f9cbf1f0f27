#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "assembly.hpp"
#include "model.hpp"
#include "projection.hpp"
#include "quadrature.hpp"
#include "solver.hpp"
#include "timedisc.hpp"

namespace stpe {

namespace {

std::string describe(double value, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max deviation %.3e (tol %.0e)", value, tol);
  return buf;
}

SelfCheck check(const std::string& name, double deviation, double tol) {
  return {name, deviation <= tol, describe(deviation, tol)};
}

MaterialParams benchmark_material() {
  return make_material(100.0, 0.35, 1.0, 0.9, 1e-3, 1e-2 * Mat2::Identity());
}

// Rules of the two families must integrate monomials exactly up to their
// stated degrees.
SelfCheck quadrature_exactness() {
  double dev = 0.0;
  for (int k = 1; k <= 4; ++k) {
    Quadrature1D gl = gauss_lobatto(k);
    for (int d = 0; d <= 2 * k - 1; ++d) {
      double acc = 0.0;
      for (int i = 0; i < gl.size(); ++i) acc += gl.weights[i] * std::pow(gl.points[i], d);
      double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1.0);
      dev = std::max(dev, std::abs(acc - exact));
    }
  }
  for (int m = 1; m <= 6; ++m) {
    Quadrature1D g = gauss_legendre(m);
    for (int d = 0; d <= 2 * m - 1; ++d) {
      double acc = 0.0;
      for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * std::pow(g.points[i], d);
      double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1.0);
      dev = std::max(dev, std::abs(acc - exact));
    }
  }
  return check("quadrature exactness", dev, 1e-13);
}

// For u' = -u, u(0) = 1, one slab of length 0.1 with k = 1 must produce
// u(0.1) = (1 - tau/2)/(1 + tau/2) = 19/21.
SelfCheck scalar_ode_step() {
  SlabBasis b = make_slab_basis(1);
  double tau = 0.1;
  double lhs = b.G(0, 1) + 0.5 * tau * b.H(0, 1);
  double rhs = -(b.G(0, 0) + 0.5 * tau * b.H(0, 0));
  double u1 = rhs / lhs;
  return check("temporal tables (k=1 decay step)", std::abs(u1 - 19.0 / 21.0), 1e-12);
}

SelfCheck projection_moments() {
  TimeMesh tm = build_time_mesh(1.0, 1.0, 0);
  auto sq = [](double t) { return (Vector(1) << t * t).finished(); };
  auto lin = [](double t) { return (Vector(1) << t).finished(); };
  LegendreSeries p1 = project_time(tm, 1, sq);
  LegendreSeries p0 = project_time(tm, 0, lin);
  double dev = 0.0;
  for (double t : {0.3, 0.8}) {
    dev = std::max(dev, std::abs(eval_series(p1, tm, t)[0] - (t - 1.0 / 6.0)));
    dev = std::max(dev, std::abs(eval_series(p0, tm, t)[0] - 0.5));
  }
  return check("slabwise L2 projection moments", dev, 1e-10);
}

// Finite-difference cross-check of the closed-form right-hand sides. The
// stencils act on the scalar generator phi only; the elasticity part uses
// the constant-coefficient identity div(C eps(u)) = mu lap u
// + (mu+lambda) grad(div u).
SelfCheck forcing_oracle() {
  using ld = long double;
  MaterialParams mat = benchmark_material();
  ManufacturedSolution sol{std::numbers::pi, std::numbers::pi};
  const ld w1 = std::numbers::pi_v<long double>, w2 = w1;
  auto phi = [&](ld x1, ld x2, ld t) { return std::sin(w1 * t * t) * std::sin(w2 * x1) * std::sin(w2 * x2); };
  const ld h = 1e-4L;
  auto d1 = [h](auto f, ld x) { return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h); };
  auto d2 = [h](auto f, ld x) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
  };

  double dev = 0.0;
  const double pts[4][3] = {{0.3, 0.7, 0.5}, {0.15, 0.85, 1.3}, {0.5, 0.5, 1.0}, {0.62, 0.43, 1.9}};
  for (const auto& pt : pts) {
    ld x1 = pt[0], x2 = pt[1], t = pt[2];
    ld ptt = d2([&](ld s) { return phi(x1, x2, s); }, t);
    ld pt1 = d1([&](ld s) { return phi(x1, x2, s); }, t);
    ld p11 = d2([&](ld y) { return phi(y, x2, t); }, x1);
    ld p22 = d2([&](ld y) { return phi(x1, y, t); }, x2);
    ld p12 = d1([&](ld y) { return d1([&](ld z) { return phi(y, z, t); }, x2); }, x1);
    ld px1 = d1([&](ld y) { return phi(y, x2, t); }, x1);
    ld px2 = d1([&](ld y) { return phi(x1, y, t); }, x2);
    ld pt_x1 = d1([&](ld y) { return d1([&](ld s) { return phi(y, x2, s); }, t); }, x1);
    ld pt_x2 = d1([&](ld y) { return d1([&](ld s) { return phi(x1, y, s); }, t); }, x2);

    ld lap = p11 + p22;
    ld f1 = ptt - (mat.mu * lap + (mat.mu + mat.lambda) * (p11 + p12)) / mat.rho +
            mat.alpha / mat.rho * px1;
    ld f2 = ptt - (mat.mu * lap + (mat.mu + mat.lambda) * (p12 + p22)) / mat.rho +
            mat.alpha / mat.rho * px2;
    ld gf = mat.c0 * pt1 + mat.alpha * (pt_x1 + pt_x2) -
            (mat.K(0, 0) * p11 + 2 * mat.K(0, 1) * p12 + mat.K(1, 1) * p22);

    Vec2 f = forcing_f(mat, sol, {pt[0], pt[1]}, pt[2]);
    double g = forcing_g(mat, sol, {pt[0], pt[1]}, pt[2]);
    dev = std::max(dev, std::abs(f.x() - static_cast<double>(f1)));
    dev = std::max(dev, std::abs(f.y() - static_cast<double>(f2)));
    dev = std::max(dev, std::abs(g - static_cast<double>(gf)));
  }
  return check("right-hand sides vs finite differences", dev, 1e-6);
}

SelfCheck ritz_orthogonality() {
  Mesh mesh = build_mesh(4);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  MaterialParams mat = benchmark_material();
  ManufacturedSolution sol{std::numbers::pi, std::numbers::pi};
  EllipticProjector proj(V, Q, mat);
  double t = 0.5;
  VectorField uf{[&](Vec2 x) { return sol.u(x, t); }, [&](Vec2 x) { return sol.grad_u(x, t); }};
  ScalarField pf{[&](Vec2 x) { return sol.p(x, t); }, [&](Vec2 x) { return sol.grad_p(x, t); }};
  double dev = proj.vector_residual(uf, proj.vector_projection(uf));
  dev = std::max(dev, proj.scalar_residual(pf, proj.scalar_projection(pf)));
  return check("Ritz projection orthogonality", dev, 1e-9);
}

// A space-time polynomial solution inside the trial space must be captured
// exactly (up to solver roundoff): u = (t+t^2) b (1,1), p = (1-t+t^2) b with
// the bubble b = x(1-x)y(1-y), on Q2 elements with k = 2.
struct ReproductionRun {
  double nodal_dev = 0.0;
  double continuity_dev = 0.0;
};

ReproductionRun polynomial_reproduction_run() {
  Mesh mesh = build_mesh(4);
  FESpace V(mesh, 2, 2);
  FESpace Q(mesh, 2, 1);
  MaterialParams mat = benchmark_material();
  SpatialQuadrature quad = tensor_quadrature(3);
  OperatorBlocks blocks = assemble_blocks(V, Q, mat, quad);
  TimeMesh tm = build_time_mesh(0.2, 0.1, 0);
  SlabBasis basis = make_slab_basis(2);
  SlabSystem sys = build_slab_system(blocks, basis, mat, tm.tau(0));

  auto b = [](Vec2 x) { return x.x() * (1.0 - x.x()) * x.y() * (1.0 - x.y()); };
  auto bx = [](Vec2 x) { return (1.0 - 2.0 * x.x()) * x.y() * (1.0 - x.y()); };
  auto by = [](Vec2 x) { return x.x() * (1.0 - x.x()) * (1.0 - 2.0 * x.y()); };
  auto bxx = [](Vec2 x) { return -2.0 * x.y() * (1.0 - x.y()); };
  auto byy = [](Vec2 x) { return -2.0 * x.x() * (1.0 - x.x()); };
  auto bxy = [](Vec2 x) { return (1.0 - 2.0 * x.x()) * (1.0 - 2.0 * x.y()); };
  auto T = [](double t) { return t + t * t; };      // displacement time factor
  auto P = [](double t) { return 1.0 - t + t * t; };  // pressure time factor

  Forcing forcing{
      [&](Vec2 x, double t) {
        double d1 = (2.0 * mat.mu + mat.lambda) * bxx(x) + (mat.lambda + mat.mu) * bxy(x) +
                    mat.mu * byy(x);
        double d2 = (2.0 * mat.mu + mat.lambda) * byy(x) + (mat.lambda + mat.mu) * bxy(x) +
                    mat.mu * bxx(x);
        double f1 = 2.0 * b(x) - T(t) / mat.rho * d1 + mat.alpha / mat.rho * P(t) * bx(x);
        double f2 = 2.0 * b(x) - T(t) / mat.rho * d2 + mat.alpha / mat.rho * P(t) * by(x);
        return Vec2(f1, f2);
      },
      [&](Vec2 x, double t) {
        return mat.c0 * (2.0 * t - 1.0) * b(x) + mat.alpha * (1.0 + 2.0 * t) * (bx(x) + by(x)) -
               P(t) * (mat.K(0, 0) * bxx(x) + 2.0 * mat.K(0, 1) * bxy(x) + mat.K(1, 1) * byy(x));
      }};

  Vector u0 = V.interpolate([&](Vec2 x) { return Vec2(T(0.0) * b(x), T(0.0) * b(x)); });
  Vector v0 = V.interpolate([&](Vec2 x) { return Vec2(b(x), b(x)); });  // T'(0) = 1
  Vector p0 = Q.interpolate([&](Vec2 x) { return P(0.0) * b(x); });
  MarchResult res = march(blocks, sys, basis, V, Q, quad, mat, forcing, tm, u0, v0, p0);

  ReproductionRun out;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    for (int j = 0; j <= basis.k; ++j) {
      double t = tm.from_ref(n, basis.rule.points[j]);
      Vector ue = V.interpolate([&](Vec2 x) { return Vec2(T(t) * b(x), T(t) * b(x)); });
      Vector ve = V.interpolate([&](Vec2 x) { return Vec2((1.0 + 2.0 * t) * b(x), (1.0 + 2.0 * t) * b(x)); });
      Vector pe = Q.interpolate([&](Vec2 x) { return P(t) * b(x); });
      out.nodal_dev = std::max(out.nodal_dev, (res.u.nodes[n][j] - ue).cwiseAbs().maxCoeff());
      out.nodal_dev = std::max(out.nodal_dev, (res.v.nodes[n][j] - ve).cwiseAbs().maxCoeff());
      out.nodal_dev = std::max(out.nodal_dev, (res.p.nodes[n][j] - pe).cwiseAbs().maxCoeff());
    }
  }
  // Hand-off across the interior slab interface: the value the first slab
  // takes at its right endpoint must be copied bit-for-bit into the second
  // slab's first trial node.
  std::vector<double> l(basis.k + 1);
  basis.trial.values(1.0, l.data());
  Vector from_left = Vector::Zero(res.u.nodes[0][0].size());
  for (int j = 0; j <= basis.k; ++j) from_left += l[j] * res.u.nodes[0][j];
  const Vector& from_right = res.u.nodes[1][0];
  out.continuity_dev = (from_left - from_right).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

std::vector<SelfCheck> run_self_test() {
  std::vector<SelfCheck> checks;
  checks.push_back(quadrature_exactness());
  checks.push_back(scalar_ode_step());
  checks.push_back(projection_moments());
  checks.push_back(forcing_oracle());
  checks.push_back(ritz_orthogonality());
  try {
    ReproductionRun rep = polynomial_reproduction_run();
    checks.push_back(check("polynomial solution reproduction", rep.nodal_dev, 1e-8));
    checks.push_back(check("slab interface continuity", rep.continuity_dev, 0.0));
  } catch (const std::exception& e) {
    checks.push_back({"polynomial solution reproduction", false, e.what()});
    checks.push_back({"slab interface continuity", false, "march failed"});
  }
  return checks;
}

}  // namespace stpe
