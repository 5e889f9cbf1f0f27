#pragma once

#include <functional>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "fespace.hpp"
#include "solver.hpp"
#include "timedisc.hpp"
#include "types.hpp"

namespace stpe {

// Space-time error norms of a nodal trajectory against a reference field.
// Spatial integrals use an order+3 tensor rule per cell; L2(L2) uses k+3
// Gauss points per slab; Linf(L2) takes the maximum over a fixed number of
// Gauss points per slab (100 unless stated otherwise, matching the reported
// benchmark convention).

double l2l2_error_scalar(const Trajectory& X, const FESpace& Q,
                         const std::function<double(Vec2, double)>& exact, const TimeMesh& tm,
                         const SlabBasis& basis);
double l2l2_error_vector(const Trajectory& X, const FESpace& V,
                         const std::function<Vec2(Vec2, double)>& exact, const TimeMesh& tm,
                         const SlabBasis& basis);
double linf_l2_error_scalar(const Trajectory& X, const FESpace& Q,
                            const std::function<double(Vec2, double)>& exact, const TimeMesh& tm,
                            const SlabBasis& basis, int samples_per_slab = 100);
double linf_l2_error_vector(const Trajectory& X, const FESpace& V,
                            const std::function<Vec2(Vec2, double)>& exact, const TimeMesh& tm,
                            const SlabBasis& basis, int samples_per_slab = 100);

// Fast path for references of the form S(t) * shape(x) (a vector field
// carries the shape in both components). The squared spatial error expands
// into Gram numbers of the nodal vectors, so no cell loop runs per sample.
struct SeparableExact {
  std::function<double(double)> time_factor;
  std::function<double(Vec2)> shape;
};

double l2l2_error_separable(const Trajectory& X, const FESpace& space, const SeparableExact& ref,
                            const TimeMesh& tm, const SlabBasis& basis,
                            int quad_points_per_slab = 0);  // 0 picks k+3
double linf_l2_error_separable(const Trajectory& X, const FESpace& space,
                               const SeparableExact& ref, const TimeMesh& tm,
                               const SlabBasis& basis, int samples_per_slab = 100);

// Experimental orders of convergence between consecutive levels.
std::vector<double> eoc(const std::vector<double>& errors);

// rho/2 <v,v> + <C eps(u), eps(u)> + c0/2 <p,p> at one time; the solution
// vectors are assumed to satisfy the boundary constraints.
double energy_instant(const OperatorBlocks& blocks, const MaterialParams& mat, const Vector& u,
                      const Vector& v, const Vector& p);
// Integral of the instantaneous quantity over (0, min(t,T)].
double energy_cumulative(const MarchResult& sol, const OperatorBlocks& blocks,
                         const MaterialParams& mat, const TimeMesh& tm, const SlabBasis& basis,
                         double t);

struct FieldErrors {
  double l2l2 = 0;
  double linf = 0;
};

struct LevelErrors {
  int level = 0;
  double tau = 0;
  double h = 0;
  FieldErrors u, v, p;
};

struct ConvergenceTable {
  std::string scheme;
  int k = 0, r = 0;
  double T = 0, tau0 = 0;
  int cells0 = 0;
  std::vector<LevelErrors> rows;
};

// Stable machine-readable summary; byte-identical across runs.
void write_csv(const ConvergenceTable& table, const std::string& path);
// Fixed-width text table, or a markdown pipe table.
std::string render_table(const ConvergenceTable& table, bool markdown);

// Debug dump: one row per temporal node with all coefficients.
void write_trajectory_csv(const Trajectory& X, const TimeMesh& tm, const SlabBasis& basis,
                          const std::string& path);

}  // namespace stpe
