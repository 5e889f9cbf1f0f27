#include "timedisc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stpe {

double TimeMesh::tau_max() const {
  double m = 0.0;
  for (int n = 0; n < n_slabs(); ++n) m = std::max(m, tau(n));
  return m;
}

int TimeMesh::slab_containing(double t) const {
  // Slabs are closed on the right, so a time that lands exactly on an
  // interior boundary belongs to the slab ending there.
  auto it = std::lower_bound(times.begin(), times.end(), t);
  int n = static_cast<int>(it - times.begin()) - 1;
  return std::clamp(n, 0, n_slabs() - 1);
}

double TimeMesh::to_ref(int n, double t) const {
  return 2.0 * (t - times[n]) / tau(n) - 1.0;
}

double TimeMesh::from_ref(int n, double s) const {
  return times[n] + 0.5 * (s + 1.0) * tau(n);
}

TimeMesh build_time_mesh(double T, double tau0, int level) {
  if (T <= 0.0 || tau0 <= 0.0) throw std::invalid_argument("build_time_mesh: T and tau0 must be positive");
  if (level < 0) throw std::invalid_argument("build_time_mesh: negative level");
  double tau = std::ldexp(tau0, -level);
  auto n = static_cast<long long>(std::llround(T / tau));
  if (n < 1 || std::abs(n * tau - T) > 1e-9)
    throw std::invalid_argument("build_time_mesh: T must be an integer multiple of the slab length");
  TimeMesh tm;
  tm.T = T;
  tm.times.resize(n + 1);
  for (long long i = 0; i <= n; ++i) tm.times[i] = T * static_cast<double>(i) / static_cast<double>(n);
  return tm;
}

SlabBasis make_slab_basis(int k) {
  if (k < 1) throw std::invalid_argument("make_slab_basis: k must be >= 1");
  SlabBasis b{k, gauss_lobatto(k), LagrangeBasis1D(gauss_lobatto(k).points),
              Matrix(), Matrix(), Matrix(), Matrix(), Matrix()};
  int n = k + 1;
  b.test_val.resize(k, n);
  b.deriv.resize(n, n);
  b.antider.resize(n, n);
  std::vector<double> d(n);
  for (int mu = 0; mu < n; ++mu) {
    double s = b.rule.points[mu];
    for (int m = 0; m < k; ++m) b.test_val(m, mu) = legendre(m, s);
    b.trial.derivs(s, d.data());
    for (int j = 0; j < n; ++j) b.deriv(mu, j) = d[j];
  }
  b.G.setZero(k, n);
  b.H.setZero(k, n);
  for (int m = 0; m < k; ++m) {
    for (int j = 0; j < n; ++j) {
      for (int mu = 0; mu < n; ++mu) {
        double w = b.rule.weights[mu];
        b.G(m, j) += w * b.test_val(m, mu) * b.deriv(mu, j);
        b.H(m, j) += w * b.test_val(m, mu) * b.trial.value(j, b.rule.points[mu]);
      }
    }
  }
  // Antiderivatives int_{-1}^{s_mu} l_j via Gauss-Legendre on each subinterval.
  Quadrature1D g = gauss_legendre(k + 1);
  for (int mu = 0; mu < n; ++mu) {
    double s = b.rule.points[mu];
    double half = 0.5 * (s + 1.0);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int q = 0; q < g.size(); ++q) {
        double x = -1.0 + half * (g.points[q] + 1.0);
        acc += g.weights[q] * b.trial.value(j, x);
      }
      b.antider(mu, j) = half * acc;
    }
  }
  return b;
}

Vector eval_trajectory(const Trajectory& traj, const TimeMesh& tm, const SlabBasis& basis,
                       double t) {
  if (traj.k != basis.k) throw std::invalid_argument("eval_trajectory: basis degree mismatch");
  int n = tm.slab_containing(t);
  double s = tm.to_ref(n, t);
  std::vector<double> vals(basis.k + 1);
  basis.trial.values(s, vals.data());
  Vector out = Vector::Zero(traj.nodes[n][0].size());
  for (int j = 0; j <= basis.k; ++j) out += vals[j] * traj.nodes[n][j];
  return out;
}

Trajectory subtract(const Trajectory& a, const Trajectory& b) {
  if (a.k != b.k || a.n_slabs() != b.n_slabs())
    throw std::invalid_argument("subtract: trajectory shapes differ");
  Trajectory out;
  out.k = a.k;
  out.nodes.resize(a.n_slabs());
  for (int n = 0; n < a.n_slabs(); ++n) {
    out.nodes[n].resize(a.k + 1);
    for (int j = 0; j <= a.k; ++j) out.nodes[n][j] = a.nodes[n][j] - b.nodes[n][j];
  }
  return out;
}

}  // namespace stpe
