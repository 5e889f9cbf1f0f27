#pragma once

#include <vector>

#include "lagrange.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace stpe {

// Partition of (0, T] into uniform slabs (t_{n-1}, t_n].
struct TimeMesh {
  double T = 0;
  std::vector<double> times;  // slab boundaries, times.front()=0, times.back()=T

  int n_slabs() const { return static_cast<int>(times.size()) - 1; }
  double tau(int n) const { return times[n + 1] - times[n]; }
  double tau_max() const;
  // Slab index whose closed-right interval contains t; t=0 maps to slab 0.
  int slab_containing(double t) const;
  double to_ref(int n, double t) const;    // (t_{n-1}, t_n] -> [-1,1]
  double from_ref(int n, double s) const;
};

// Slab count must be integral: T/tau is rounded and rejected if it is off
// by more than 1e-9 in absolute terms.
TimeMesh build_time_mesh(double T, double tau0, int level);

// Temporal ingredients of one slab in reference coordinates s in [-1,1].
// Trial functions are the Lagrange polynomials l_j on the k+1 Gauss-Lobatto
// nodes; test functions are the Legendre polynomials P_0..P_{k-1}. All
// coupling integrals below are evaluated with the Gauss-Lobatto rule itself,
// which is exact for them (degree <= 2k-1).
struct SlabBasis {
  int k = 0;
  Quadrature1D rule;     // Gauss-Lobatto nodes/weights, k+1 points
  LagrangeBasis1D trial; // Lagrange basis at rule.points

  Matrix G;         // k x (k+1), G(m,j)   = int P_m l_j'
  Matrix H;         // k x (k+1), H(m,j)   = int P_m l_j   (scale by tau/2 in use)
  Matrix test_val;  // k x (k+1), P_m(s_mu)
  Matrix deriv;     // (k+1) x (k+1), l_j'(s_mu)
  Matrix antider;   // (k+1) x (k+1), int_{-1}^{s_mu} l_j

  double trial_value(int j, double s) const { return trial.value(j, s); }
};

SlabBasis make_slab_basis(int k);

// Coefficient vectors at the k+1 temporal nodes of every slab. Node 0 of
// slab n coincides with node k of slab n-1 for a continuous-in-time field.
struct Trajectory {
  int k = 0;
  std::vector<std::vector<Vector>> nodes;  // [slab][temporal node]

  int n_slabs() const { return static_cast<int>(nodes.size()); }
};

// Evaluate a trajectory at time t (Lagrange interpolation within the slab).
Vector eval_trajectory(const Trajectory& traj, const TimeMesh& tm, const SlabBasis& basis,
                       double t);

// Nodewise difference a - b of structurally identical trajectories.
Trajectory subtract(const Trajectory& a, const Trajectory& b);

}  // namespace stpe
