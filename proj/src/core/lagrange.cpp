#include "lagrange.hpp"

#include <cmath>
#include <stdexcept>

namespace stpe {

LagrangeBasis1D::LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  int n = size();
  if (n < 1) throw std::invalid_argument("LagrangeBasis1D: empty node set");
  bary_.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      double d = nodes_[j] - nodes_[i];
      if (d == 0.0) throw std::invalid_argument("LagrangeBasis1D: repeated node");
      bary_[j] /= d;
    }
  }
}

int LagrangeBasis1D::near_node(double x) const {
  for (int i = 0; i < size(); ++i) {
    if (std::abs(x - nodes_[i]) < 1e-13) return i;
  }
  return -1;
}

void LagrangeBasis1D::values(double x, double* out) const {
  int n = size();
  int k = near_node(x);
  if (k >= 0) {
    for (int j = 0; j < n; ++j) out[j] = (j == k) ? 1.0 : 0.0;
    return;
  }
  // First-form barycentric: L_j(x) = l(x) w_j / (x - x_j).
  double l = 1.0;
  for (int i = 0; i < n; ++i) l *= x - nodes_[i];
  for (int j = 0; j < n; ++j) out[j] = l * bary_[j] / (x - nodes_[j]);
}

void LagrangeBasis1D::derivs(double x, double* out) const {
  int n = size();
  int k = near_node(x);
  if (k >= 0) {
    // Differentiation matrix row at node k.
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      out[j] = (bary_[j] / bary_[k]) / (nodes_[k] - nodes_[j]);
      diag -= out[j];
    }
    out[k] = diag;
    return;
  }
  // L_j'(x) = L_j(x) * sum_{i != j} 1/(x - x_i).
  std::vector<double> vals(n);
  values(x, vals.data());
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += 1.0 / (x - nodes_[i]);
  for (int j = 0; j < n; ++j) out[j] = vals[j] * (s - 1.0 / (x - nodes_[j]));
}

double LagrangeBasis1D::value(int j, double x) const {
  std::vector<double> vals(size());
  values(x, vals.data());
  return vals[j];
}

double LagrangeBasis1D::deriv(int j, double x) const {
  std::vector<double> d(size());
  derivs(x, d.data());
  return d[j];
}

}  // namespace stpe
