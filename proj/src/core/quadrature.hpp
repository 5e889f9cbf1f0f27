#pragma once

#include <vector>

namespace stpe {

// Legendre polynomial P_n and its derivative on [-1,1], by three-term recurrence.
double legendre(int n, double x);
double legendre_deriv(int n, double x);

struct Quadrature1D {
  std::vector<double> points;   // ascending, on [-1,1]
  std::vector<double> weights;  // positive, sum to 2
  int size() const { return static_cast<int>(points.size()); }
};

// m-point Gauss-Legendre rule on [-1,1]; exact for polynomials of degree 2m-1.
Quadrature1D gauss_legendre(int m);

// (k+1)-point Gauss-Lobatto rule on [-1,1]; endpoints included,
// exact for polynomials of degree 2k-1. Requires k >= 1.
Quadrature1D gauss_lobatto(int k);

// Tensor-product Gauss-Legendre rule on the unit reference cell [0,1]^2,
// m points per axis. Weights sum to 1.
struct SpatialQuadrature {
  std::vector<double> x, y;  // reference coordinates
  std::vector<double> w;
  int points_per_axis = 0;
  int size() const { return static_cast<int>(w.size()); }
};

SpatialQuadrature tensor_quadrature(int points_per_axis);

}  // namespace stpe
