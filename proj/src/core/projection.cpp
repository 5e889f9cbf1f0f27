#include "projection.hpp"

#include <algorithm>
#include <cmath>

#include "postprocess.hpp"

namespace stpe {

EllipticProjector::EllipticProjector(const FESpace& V, const FESpace& Q,
                                     const MaterialParams& mat)
    : V_(V), Q_(Q), mat_(mat) {
  SpatialQuadrature quad = tensor_quadrature(std::max(V.order(), Q.order()) + 1);
  Ae_ = assemble_elasticity(V, mat, quad);
  Ap_ = assemble_diffusion(Q, mat.K, quad);
  apply_dirichlet(Ae_, V.dirichlet_dofs(), V.dirichlet_dofs(), true);
  apply_dirichlet(Ap_, Q.dirichlet_dofs(), Q.dirichlet_dofs(), true);
  lu_e_ = std::make_unique<LUSolver>(Ae_);
  lu_p_ = std::make_unique<LUSolver>(Ap_);
  rhs_quad_v_ = tensor_quadrature(V.order() + 3);
  rhs_quad_p_ = tensor_quadrature(Q.order() + 3);
}

Vector EllipticProjector::vector_rhs(const VectorField& w) const {
  Vector b = assemble_elasticity_load(V_, mat_, rhs_quad_v_, w.jacobian);
  zero_dirichlet(V_, b);
  return b;
}

Vector EllipticProjector::scalar_rhs(const ScalarField& w) const {
  Vector b = assemble_diffusion_load(Q_, mat_.K, rhs_quad_p_, w.gradient);
  zero_dirichlet(Q_, b);
  return b;
}

Vector EllipticProjector::vector_projection(const VectorField& w) const {
  return lu_e_->solve(vector_rhs(w));
}

Vector EllipticProjector::scalar_projection(const ScalarField& w) const {
  return lu_p_->solve(scalar_rhs(w));
}

double EllipticProjector::vector_residual(const VectorField& w, const Vector& x) const {
  return (Ae_ * x - vector_rhs(w)).cwiseAbs().maxCoeff();
}

double EllipticProjector::scalar_residual(const ScalarField& w, const Vector& x) const {
  return (Ap_ * x - scalar_rhs(w)).cwiseAbs().maxCoeff();
}

Trajectory interpolate_time(const TimeMesh& tm, const SlabBasis& basis,
                            const std::function<Vector(double)>& w) {
  Trajectory traj;
  traj.k = basis.k;
  traj.nodes.resize(tm.n_slabs());
  for (int n = 0; n < tm.n_slabs(); ++n) {
    traj.nodes[n].resize(basis.k + 1);
    for (int mu = 0; mu <= basis.k; ++mu)
      traj.nodes[n][mu] = w(tm.from_ref(n, basis.rule.points[mu]));
  }
  return traj;
}

LegendreSeries project_time(const TimeMesh& tm, int degree,
                            const std::function<Vector(double)>& w, int quad_points) {
  if (degree < 0) throw std::invalid_argument("project_time: negative degree");
  Quadrature1D g = gauss_legendre(std::max(quad_points, degree + 1));
  LegendreSeries s;
  s.degree = degree;
  s.coeff.resize(tm.n_slabs());
  for (int n = 0; n < tm.n_slabs(); ++n) {
    std::vector<Vector> samples(g.size());
    for (int q = 0; q < g.size(); ++q) samples[q] = w(tm.from_ref(n, g.points[q]));
    s.coeff[n].resize(degree + 1);
    for (int m = 0; m <= degree; ++m) {
      Vector acc = Vector::Zero(samples[0].size());
      for (int q = 0; q < g.size(); ++q)
        acc += g.weights[q] * legendre(m, g.points[q]) * samples[q];
      s.coeff[n][m] = 0.5 * (2.0 * m + 1.0) * acc;
    }
  }
  return s;
}

Vector eval_series(const LegendreSeries& s, const TimeMesh& tm, double t) {
  int n = tm.slab_containing(t);
  double sr = tm.to_ref(n, t);
  Vector out = Vector::Zero(s.coeff[n][0].size());
  for (int m = 0; m <= s.degree; ++m) out += legendre(m, sr) * s.coeff[n][m];
  return out;
}

SpecialApprox special_approximation(const TimeVectorField& u, const EllipticProjector& proj,
                                    const TimeMesh& tm, const SlabBasis& basis) {
  SpecialApprox sa;
  sa.w2 = interpolate_time(tm, basis, [&](double t) {
    return proj.vector_projection({[&u, t](Vec2 x) { return u.dt_value(x, t); },
                                   [&u, t](Vec2 x) { return u.dt_jacobian(x, t); }});
  });
  sa.w1.k = basis.k;
  sa.w1.nodes.resize(tm.n_slabs());
  for (int n = 0; n < tm.n_slabs(); ++n) {
    double tl = tm.times[n];
    Vector left = proj.vector_projection(
        {[&u, tl](Vec2 x) { return u.value(x, tl); }, [&u, tl](Vec2 x) { return u.jacobian(x, tl); }});
    sa.w1.nodes[n].resize(basis.k + 1);
    for (int mu = 0; mu <= basis.k; ++mu) {
      Vector acc = left;
      for (int j = 0; j <= basis.k; ++j)
        acc += 0.5 * tm.tau(n) * basis.antider(mu, j) * sa.w2.nodes[n][j];
      sa.w1.nodes[n][mu] = acc;
    }
  }
  return sa;
}

InitialValues initial_values(const FESpace& V, const FESpace& Q, const EllipticProjector& proj,
                             const ManufacturedSolution& sol, InitialValueStrategy strategy) {
  InitialValues iv;
  if (strategy == InitialValueStrategy::elliptic_projection) {
    iv.u0 = proj.vector_projection({[&sol](Vec2 x) { return sol.u(x, 0.0); },
                                    [&sol](Vec2 x) { return sol.grad_u(x, 0.0); }});
  } else {
    iv.u0 = V.interpolate([&sol](Vec2 x) { return sol.u(x, 0.0); });
  }
  iv.v0 = V.interpolate([&sol](Vec2 x) { return sol.v(x, 0.0); });
  iv.p0 = Q.interpolate([&sol](Vec2 x) { return sol.p(x, 0.0); });
  zero_dirichlet(V, iv.u0);
  zero_dirichlet(V, iv.v0);
  zero_dirichlet(Q, iv.p0);
  return iv;
}

ErrorSplit error_split(const MarchResult& sol, const ManufacturedSolution& exact,
                       const MaterialParams& mat, const FESpace& V, const FESpace& Q,
                       const TimeMesh& tm, const SlabBasis& basis) {
  EllipticProjector proj(V, Q, mat);
  TimeVectorField u_field{
      [&exact](Vec2 x, double t) { return exact.u(x, t); },
      [&exact](Vec2 x, double t) { return exact.grad_u(x, t); },
      [&exact](Vec2 x, double t) { return exact.v(x, t); },
      [&exact](Vec2 x, double t) { return exact.grad_v(x, t); }};
  SpecialApprox sa = special_approximation(u_field, proj, tm, basis);
  Trajectory irp = interpolate_time(tm, basis, [&](double t) {
    return proj.scalar_projection({[&exact, t](Vec2 x) { return exact.p(x, t); },
                                   [&exact, t](Vec2 x) { return exact.grad_p(x, t); }});
  });

  auto exact_u = [&exact](Vec2 x, double t) { return exact.u(x, t); };
  auto exact_v = [&exact](Vec2 x, double t) { return exact.v(x, t); };
  auto exact_p = [&exact](Vec2 x, double t) { return exact.p(x, t); };
  auto zero_vec = [](Vec2, double) { return Vec2(0.0, 0.0); };
  auto zero_sca = [](Vec2, double) { return 0.0; };

  ErrorSplit es;
  es.eta1 = l2l2_error_vector(sa.w1, V, exact_u, tm, basis);
  es.eta2 = l2l2_error_vector(sa.w2, V, exact_v, tm, basis);
  es.E1 = l2l2_error_vector(subtract(sa.w1, sol.u), V, zero_vec, tm, basis);
  es.E2 = l2l2_error_vector(subtract(sa.w2, sol.v), V, zero_vec, tm, basis);
  es.omega = l2l2_error_scalar(irp, Q, exact_p, tm, basis);
  es.e = l2l2_error_scalar(subtract(irp, sol.p), Q, zero_sca, tm, basis);

  // The two summands must recombine to the plain error pointwise.
  double defect = 0.0;
  for (double tf : {0.31, 0.67, 1.0}) {
    double t = tf * tm.T;
    Vector w1 = eval_trajectory(sa.w1, tm, basis, t);
    Vector uh = eval_trajectory(sol.u, tm, basis, t);
    Vector ph = eval_trajectory(sol.p, tm, basis, t);
    Vector rp = eval_trajectory(irp, tm, basis, t);
    for (Vec2 x : {Vec2(0.3, 0.4), Vec2(0.7, 0.6), Vec2(0.55, 0.15)}) {
      Vec2 du = exact.u(x, t) - V.value_vector(uh, x);
      Vec2 split = (exact.u(x, t) - V.value_vector(w1, x)) +
                   (V.value_vector(w1, x) - V.value_vector(uh, x));
      defect = std::max(defect, (du - split).cwiseAbs().maxCoeff());
      double dp = exact.p(x, t) - Q.value_scalar(ph, x);
      double splitp = (exact.p(x, t) - Q.value_scalar(rp, x)) +
                      (Q.value_scalar(rp, x) - Q.value_scalar(ph, x));
      defect = std::max(defect, std::abs(dp - splitp));
    }
  }
  es.recombination_defect = defect;
  return es;
}

}  // namespace stpe
