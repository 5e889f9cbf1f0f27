#include "model.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace stpe {

Mat2 MaterialParams::stress(const Mat2& eps) const {
  return 2.0 * mu * eps + lambda * eps.trace() * Mat2::Identity();
}

MaterialParams make_material(double E, double nu, double rho, double alpha, double c0,
                             const Mat2& K) {
  if (E <= 0.0) throw std::invalid_argument("make_material: E must be positive");
  if (nu <= 0.0 || nu >= 0.5) throw std::invalid_argument("make_material: nu must lie in (0, 0.5)");
  if (rho <= 0.0 || alpha <= 0.0 || c0 <= 0.0)
    throw std::invalid_argument("make_material: rho, alpha, c0 must be positive");
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-12 * (1.0 + K.cwiseAbs().maxCoeff()) ||
      K(0, 0) <= 0.0 || K.determinant() <= 0.0)
    throw std::invalid_argument("make_material: K must be symmetric positive definite");
  MaterialParams m;
  m.rho = rho;
  m.alpha = alpha;
  m.c0 = c0;
  m.K = K;
  m.E = E;
  m.nu = nu;
  m.mu = E / (2.0 * (1.0 + nu));
  m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  return m;
}

double ManufacturedSolution::time_factor(double t) const { return std::sin(omega1 * t * t); }

double ManufacturedSolution::time_factor_dt(double t) const {
  return 2.0 * omega1 * t * std::cos(omega1 * t * t);
}

double ManufacturedSolution::time_factor_dtt(double t) const {
  double a = omega1 * t * t;
  return 2.0 * omega1 * std::cos(a) - 4.0 * omega1 * omega1 * t * t * std::sin(a);
}

double ManufacturedSolution::shape(Vec2 x) const {
  return std::sin(omega2 * x.x()) * std::sin(omega2 * x.y());
}

Vec2 ManufacturedSolution::shape_grad(Vec2 x) const {
  double s1 = std::sin(omega2 * x.x()), c1 = std::cos(omega2 * x.x());
  double s2 = std::sin(omega2 * x.y()), c2 = std::cos(omega2 * x.y());
  return omega2 * Vec2(c1 * s2, s1 * c2);
}

Mat2 ManufacturedSolution::shape_hess(Vec2 x) const {
  double s1 = std::sin(omega2 * x.x()), c1 = std::cos(omega2 * x.x());
  double s2 = std::sin(omega2 * x.y()), c2 = std::cos(omega2 * x.y());
  double w2 = omega2 * omega2;
  Mat2 h;
  h << -w2 * s1 * s2, w2 * c1 * c2, w2 * c1 * c2, -w2 * s1 * s2;
  return h;
}

Vec2 ManufacturedSolution::u(Vec2 x, double t) const { return phi(x, t) * Vec2::Ones(); }

Vec2 ManufacturedSolution::v(Vec2 x, double t) const {
  return time_factor_dt(t) * shape(x) * Vec2::Ones();
}

Mat2 ManufacturedSolution::grad_u(Vec2 x, double t) const {
  Vec2 g = time_factor(t) * shape_grad(x);
  Mat2 out;
  out.row(0) = g.transpose();
  out.row(1) = g.transpose();
  return out;
}

Mat2 ManufacturedSolution::grad_v(Vec2 x, double t) const {
  Vec2 g = time_factor_dt(t) * shape_grad(x);
  Mat2 out;
  out.row(0) = g.transpose();
  out.row(1) = g.transpose();
  return out;
}

Vec2 ManufacturedSolution::grad_p(Vec2 x, double t) const {
  return time_factor(t) * shape_grad(x);
}

Vec2 forcing_f(const MaterialParams& mat, const ManufacturedSolution& sol, Vec2 x, double t) {
  double S = sol.time_factor(t);
  double Stt = sol.time_factor_dtt(t);
  double psi = sol.shape(x);
  Vec2 g = sol.shape_grad(x);
  Mat2 h = sol.shape_hess(x);
  // div(C eps(u)) for u = phi (1,1)^T, written out per component.
  double lam = mat.lambda, mu = mat.mu;
  double div1 = S * ((2.0 * mu + lam) * h(0, 0) + (lam + mu) * h(0, 1) + mu * h(1, 1));
  double div2 = S * ((2.0 * mu + lam) * h(1, 1) + (lam + mu) * h(0, 1) + mu * h(0, 0));
  Vec2 f;
  f.x() = Stt * psi - div1 / mat.rho + mat.alpha / mat.rho * S * g.x();
  f.y() = Stt * psi - div2 / mat.rho + mat.alpha / mat.rho * S * g.y();
  return f;
}

double forcing_g(const MaterialParams& mat, const ManufacturedSolution& sol, Vec2 x, double t) {
  double S = sol.time_factor(t);
  double St = sol.time_factor_dt(t);
  double psi = sol.shape(x);
  Vec2 g = sol.shape_grad(x);
  Mat2 h = sol.shape_hess(x);
  double diffusion = S * (mat.K(0, 0) * h(0, 0) + (mat.K(0, 1) + mat.K(1, 0)) * h(0, 1) +
                          mat.K(1, 1) * h(1, 1));
  return mat.c0 * St * psi + mat.alpha * St * (g.x() + g.y()) - diffusion;
}

}  // namespace stpe
