#include <cmath>
#include <vector>

#include <doctest.h>

#include "lagrange.hpp"
#include "quadrature.hpp"

using namespace stpe;

TEST_CASE("gauss-lobatto nodes and weights at low orders") {
  Quadrature1D gl2 = gauss_lobatto(2);
  REQUIRE(gl2.size() == 3);
  CHECK(gl2.points[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(gl2.points[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(gl2.points[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gl2.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(gl2.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(gl2.weights[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  Quadrature1D gl3 = gauss_lobatto(3);
  REQUIRE(gl3.size() == 4);
  CHECK(gl3.points[1] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(gl3.points[2] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(gl3.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(gl3.weights[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("gauss rules integrate monomials to their stated degree") {
  for (int m = 1; m <= 8; ++m) {
    Quadrature1D q = gauss_legendre(m);
    for (int d = 0; d <= 2 * m - 1; ++d) {
      double acc = 0.0;
      for (int i = 0; i < q.size(); ++i) acc += q.weights[i] * std::pow(q.points[i], d);
      double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
  for (int k = 1; k <= 5; ++k) {
    Quadrature1D q = gauss_lobatto(k);
    for (int d = 0; d <= 2 * k - 1; ++d) {
      double acc = 0.0;
      for (int i = 0; i < q.size(); ++i) acc += q.weights[i] * std::pow(q.points[i], d);
      double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
}

TEST_CASE("tensor rule on the unit square") {
  SpatialQuadrature q = tensor_quadrature(3);
  REQUIRE(q.size() == 9);
  double mass = 0.0, mom = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    mass += q.w[i];
    mom += q.w[i] * q.x[i] * q.x[i] * q.y[i] * q.y[i] * q.y[i];
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mom == doctest::Approx(1.0 / 12.0).epsilon(1e-13));  // int x^2 y^3
}

TEST_CASE("lagrange basis is nodal and reproduces polynomials") {
  std::vector<double> nodes = {-1.0, -0.3, 0.4, 1.0};
  LagrangeBasis1D basis(nodes);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(basis.value(i, nodes[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));

  auto f = [](double x) { return 2.0 - x + 0.5 * x * x - 0.25 * x * x * x; };
  auto df = [](double x) { return -1.0 + x - 0.75 * x * x; };
  for (double x : {-0.95, -0.3, 0.11, 0.77}) {
    double val = 0.0, der = 0.0, unity = 0.0;
    for (int i = 0; i < 4; ++i) {
      val += f(nodes[i]) * basis.value(i, x);
      der += f(nodes[i]) * basis.deriv(i, x);
      unity += basis.value(i, x);
    }
    CHECK(val == doctest::Approx(f(x)).epsilon(1e-13));
    CHECK(der == doctest::Approx(df(x)).epsilon(1e-12));
    CHECK(unity == doctest::Approx(1.0).epsilon(1e-13));
  }
}
