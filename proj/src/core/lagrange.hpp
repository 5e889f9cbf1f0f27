#pragma once

#include <vector>

namespace stpe {

// Lagrange basis on a set of distinct 1D nodes, evaluated with the
// barycentric formula. Stable for the node counts used here (<= 8).
class LagrangeBasis1D {
 public:
  explicit LagrangeBasis1D(std::vector<double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(int j, double x) const;
  double deriv(int j, double x) const;

  // All basis values / derivatives at x; out must hold size() entries.
  void values(double x, double* out) const;
  void derivs(double x, double* out) const;

 private:
  // Index of a node within 1e-13 of x, or -1.
  int near_node(double x) const;

  std::vector<double> nodes_;
  std::vector<double> bary_;  // barycentric weights
};

}  // namespace stpe
