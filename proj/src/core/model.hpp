#pragma once

#include "types.hpp"

namespace stpe {

// Poroelastic material data. lambda and mu are the plane-strain Lame
// parameters derived from E and nu.
struct MaterialParams {
  double rho = 1.0;    // solid density
  double alpha = 1.0;  // fluid-solid coupling coefficient
  double c0 = 1.0;     // storage coefficient
  Mat2 K = Mat2::Identity();  // permeability, symmetric positive definite
  double E = 1.0;
  double nu = 0.3;
  double lambda = 0.0;
  double mu = 0.0;

  // C eps = 2 mu eps + lambda tr(eps) I
  Mat2 stress(const Mat2& eps) const;
};

MaterialParams make_material(double E, double nu, double rho, double alpha, double c0,
                             const Mat2& K);

// Closed-form benchmark solution
//   phi(x,t) = sin(omega1 t^2) sin(omega2 x1) sin(omega2 x2),
//   u = phi (1,1)^T,  v = dt u,  p = phi.
// It vanishes on the boundary of the unit square and at t = 0, and is
// separable: every field is time_factor-derivative times shape.
struct ManufacturedSolution {
  double omega1;
  double omega2;

  double time_factor(double t) const;      // sin(omega1 t^2)
  double time_factor_dt(double t) const;
  double time_factor_dtt(double t) const;

  double shape(Vec2 x) const;              // sin(omega2 x1) sin(omega2 x2)
  Vec2 shape_grad(Vec2 x) const;
  Mat2 shape_hess(Vec2 x) const;

  double phi(Vec2 x, double t) const { return time_factor(t) * shape(x); }

  Vec2 u(Vec2 x, double t) const;
  Vec2 v(Vec2 x, double t) const;
  double p(Vec2 x, double t) const { return phi(x, t); }

  Mat2 grad_u(Vec2 x, double t) const;  // row i = gradient of component i
  Mat2 grad_v(Vec2 x, double t) const;
  Vec2 grad_p(Vec2 x, double t) const;
};

// Right-hand sides that make the manufactured solution solve the system
//   dt u - v = 0
//   rho dt v - div(C eps(u)) + alpha grad p = rho f
//   c0 dt p + alpha div(dt u) - div(K grad p) = g.
Vec2 forcing_f(const MaterialParams& mat, const ManufacturedSolution& sol, Vec2 x, double t);
double forcing_g(const MaterialParams& mat, const ManufacturedSolution& sol, Vec2 x, double t);

}  // namespace stpe
