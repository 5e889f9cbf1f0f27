#pragma once

#include <functional>
#include <memory>

#include "assembly.hpp"
#include "fespace.hpp"
#include "model.hpp"
#include "solver.hpp"
#include "timedisc.hpp"
#include "types.hpp"

namespace stpe {

struct VectorField {
  std::function<Vec2(Vec2)> value;
  std::function<Mat2(Vec2)> jacobian;  // row i = gradient of component i
};

struct ScalarField {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
};

// Ritz projections onto the constrained spaces: the vector projection is
// orthogonal in <C eps(.), eps(.)>, the scalar one in <K grad(.), grad(.)>.
// Right-hand sides use an order+3 quadrature; the caller keeps the spaces
// alive for the lifetime of the projector.
class EllipticProjector {
 public:
  EllipticProjector(const FESpace& V, const FESpace& Q, const MaterialParams& mat);

  Vector vector_projection(const VectorField& w) const;
  Vector scalar_projection(const ScalarField& w) const;

  // Galerkin residual ||A x - b||_inf of a candidate projection, for checks.
  double vector_residual(const VectorField& w, const Vector& x) const;
  double scalar_residual(const ScalarField& w, const Vector& x) const;

 private:
  Vector vector_rhs(const VectorField& w) const;
  Vector scalar_rhs(const ScalarField& w) const;

  const FESpace& V_;
  const FESpace& Q_;
  MaterialParams mat_;
  SparseMatrix Ae_, Ap_;
  std::unique_ptr<LUSolver> lu_e_, lu_p_;
  SpatialQuadrature rhs_quad_v_, rhs_quad_p_;
};

// Lagrange interpolation in time at the Gauss-Lobatto nodes of every slab.
Trajectory interpolate_time(const TimeMesh& tm, const SlabBasis& basis,
                            const std::function<Vector(double)>& w);

// Slabwise L2 projection in time onto polynomials of the given degree,
// stored as Legendre coefficients per slab.
struct LegendreSeries {
  int degree = 0;
  std::vector<std::vector<Vector>> coeff;  // [slab][m]
};

LegendreSeries project_time(const TimeMesh& tm, int degree,
                            const std::function<Vector(double)>& w, int quad_points = 8);
Vector eval_series(const LegendreSeries& s, const TimeMesh& tm, double t);

// Approximation pair (w1, w2) of (u, dt u): w2 interpolates the Ritz
// projection of dt u in time; w1 accumulates the exact antiderivative of w2
// from the Ritz projection at each slab's left endpoint, interpolated in
// time. w1 is discontinuous across slab interfaces by the integration error.
struct TimeVectorField {
  std::function<Vec2(Vec2, double)> value;
  std::function<Mat2(Vec2, double)> jacobian;
  std::function<Vec2(Vec2, double)> dt_value;
  std::function<Mat2(Vec2, double)> dt_jacobian;
};

struct SpecialApprox {
  Trajectory w1, w2;
};

SpecialApprox special_approximation(const TimeVectorField& u, const EllipticProjector& proj,
                                    const TimeMesh& tm, const SlabBasis& basis);

enum class InitialValueStrategy { elliptic_projection, nodal_interpolation };

struct InitialValues {
  Vector u0, v0, p0;
};

// Discrete initial data: the displacement uses the chosen strategy, velocity
// and pressure are interpolated nodally; constrained dofs are zeroed.
InitialValues initial_values(const FESpace& V, const FESpace& Q, const EllipticProjector& proj,
                             const ManufacturedSolution& sol, InitialValueStrategy strategy);

// L2(L2)-norm pieces of the two-way error split against the closed-form
// solution: (u,v) against (w1,w2) plus discrete remainders, pressure against
// its time-interpolated Ritz projection.
struct ErrorSplit {
  double eta1 = 0, eta2 = 0;  // u - w1, v - w2
  double E1 = 0, E2 = 0;      // w1 - u_h, w2 - v_h
  double omega = 0, e = 0;    // p - I_t R_h p, I_t R_h p - p_h
  // max sampled defect of eta + E against the directly computed error
  double recombination_defect = 0;
};

ErrorSplit error_split(const MarchResult& sol, const ManufacturedSolution& exact,
                       const MaterialParams& mat, const FESpace& V, const FESpace& Q,
                       const TimeMesh& tm, const SlabBasis& basis);

}  // namespace stpe
