#include "quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stpe {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int j = 2; j <= n; ++j) {
    double pn = ((2.0 * j - 1.0) * x * p - (j - 1.0) * pm1) / j;
    pm1 = p;
    p = pn;
  }
  return p;
}

double legendre_deriv(int n, double x) {
  if (n == 0) return 0.0;
  // (1-x^2) P_n' = n (P_{n-1} - x P_n); endpoints via P_n'(+-1) = (+-1)^{n-1} n(n+1)/2.
  if (std::abs(1.0 - x * x) < 1e-14) {
    double sign = (x > 0.0 || n % 2 == 1) ? 1.0 : -1.0;
    return sign * 0.5 * n * (n + 1.0);
  }
  return n * (legendre(n - 1, x) - x * legendre(n, x)) / (1.0 - x * x);
}

Quadrature1D gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  Quadrature1D q;
  q.points.resize(m);
  q.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_m to machine precision.
    double x = std::cos(std::numbers::pi * (m - i - 0.25) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double dx = legendre(m, x) / legendre_deriv(m, x);
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double d = legendre_deriv(m, x);
    q.points[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * d * d);
  }
  // Symmetrize the rule exactly.
  for (int i = 0; i < m / 2; ++i) {
    int j = m - 1 - i;
    double x = 0.5 * (q.points[j] - q.points[i]);
    double w = 0.5 * (q.weights[i] + q.weights[j]);
    q.points[i] = -x;
    q.points[j] = x;
    q.weights[i] = q.weights[j] = w;
  }
  if (m % 2 == 1) q.points[m / 2] = 0.0;
  return q;
}

Quadrature1D gauss_lobatto(int k) {
  if (k < 1) throw std::invalid_argument("gauss_lobatto: need k >= 1");
  int n = k + 1;
  Quadrature1D q;
  q.points.resize(n);
  q.weights.resize(n);
  q.points[0] = -1.0;
  q.points[n - 1] = 1.0;
  // Interior nodes are the roots of P_k'; Newton with P_k'' from the
  // Legendre ODE (1-x^2) P'' = 2x P' - k(k+1) P.
  for (int i = 1; i < n - 1; ++i) {
    double x = -std::cos(std::numbers::pi * i / k);
    for (int it = 0; it < 100; ++it) {
      double d1 = legendre_deriv(k, x);
      double d2 = (2.0 * x * d1 - k * (k + 1.0) * legendre(k, x)) / (1.0 - x * x);
      double dx = d1 / d2;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.points[i] = x;
  }
  for (int i = 0; i < n / 2; ++i) {
    int j = n - 1 - i;
    double x = 0.5 * (q.points[j] - q.points[i]);
    q.points[i] = -x;
    q.points[j] = x;
  }
  if (n % 2 == 1) q.points[n / 2] = 0.0;
  for (int i = 0; i < n; ++i) {
    double p = legendre(k, q.points[i]);
    q.weights[i] = 2.0 / (k * (k + 1.0) * p * p);
  }
  return q;
}

SpatialQuadrature tensor_quadrature(int points_per_axis) {
  Quadrature1D g = gauss_legendre(points_per_axis);
  SpatialQuadrature q;
  q.points_per_axis = points_per_axis;
  int m = points_per_axis;
  q.x.reserve(m * m);
  q.y.reserve(m * m);
  q.w.reserve(m * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      q.x.push_back(0.5 * (g.points[i] + 1.0));
      q.y.push_back(0.5 * (g.points[j] + 1.0));
      q.w.push_back(0.25 * g.weights[i] * g.weights[j]);
    }
  }
  return q;
}

}  // namespace stpe
