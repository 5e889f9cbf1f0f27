#include <cmath>
#include <random>

#include <doctest.h>

#include "timedisc.hpp"

using namespace stpe;

TEST_CASE("time mesh construction and slab lookup") {
  TimeMesh tm = build_time_mesh(2.0, 0.1, 0);
  CHECK(tm.n_slabs() == 20);
  CHECK(tm.tau(0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(tm.times.front() == 0.0);
  CHECK(tm.times.back() == 2.0);

  TimeMesh fine = build_time_mesh(2.0, 0.1, 2);
  CHECK(fine.n_slabs() == 80);
  CHECK(fine.tau(3) == doctest::Approx(0.025).epsilon(1e-14));

  CHECK(tm.slab_containing(0.0) == 0);
  CHECK(tm.slab_containing(0.1) == 0);   // slabs are closed on the right
  CHECK(tm.slab_containing(0.1001) == 1);
  CHECK(tm.slab_containing(2.0) == 19);

  CHECK(tm.from_ref(3, -1.0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(tm.to_ref(3, 0.35) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(build_time_mesh(1.0, 0.3, 0), std::invalid_argument);
}

TEST_CASE("temporal coupling tables at k = 1 and k = 2") {
  SlabBasis b1 = make_slab_basis(1);
  CHECK(b1.G(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(b1.G(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b1.H(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b1.H(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b1.antider(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(b1.antider(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b1.antider(1, 1) == doctest::Approx(1.0).epsilon(1e-14));

  SlabBasis b2 = make_slab_basis(2);
  // Antiderivatives of the nodal quadratics from -1 to 0 and to 1.
  CHECK(b2.antider(1, 0) == doctest::Approx(5.0 / 12.0).epsilon(1e-13));
  CHECK(b2.antider(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(b2.antider(1, 2) == doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
  CHECK(b2.antider(2, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(b2.antider(2, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(b2.antider(2, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

// Nodewise antidifferentiation commutes with the weak time derivative: if
// W1 interpolates the exact antiderivative of the degree-k interpolant W2,
// then sum_j G(m,j) W1_j = sum_j H(m,j) W2_j for every test index m < k.
TEST_CASE("antiderivative table matches the weak derivative tables") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k : {1, 2, 3, 4}) {
    SlabBasis b = make_slab_basis(k);
    std::vector<double> w2(k + 1), w1(k + 1, 0.0);
    for (double& v : w2) v = dist(rng);
    for (int mu = 0; mu <= k; ++mu)
      for (int j = 0; j <= k; ++j) w1[mu] += b.antider(mu, j) * w2[j];
    for (int m = 0; m < k; ++m) {
      double lhs = 0.0, rhs = 0.0;
      for (int j = 0; j <= k; ++j) {
        lhs += b.G(m, j) * w1[j];
        rhs += b.H(m, j) * w2[j];
      }
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("trajectory evaluation interpolates and is continuous") {
  TimeMesh tm = build_time_mesh(1.0, 0.25, 0);
  SlabBasis basis = make_slab_basis(2);
  auto f = [](double t) { return (Vector(2) << t * t - 0.5 * t, 1.0 + t).finished(); };

  Trajectory traj;
  traj.k = 2;
  traj.nodes.resize(tm.n_slabs());
  for (int n = 0; n < tm.n_slabs(); ++n)
    for (int j = 0; j <= 2; ++j)
      traj.nodes[n].push_back(f(tm.from_ref(n, basis.rule.points[j])));

  for (double t : {0.0, 0.1, 0.25, 0.4, 0.77, 1.0}) {
    Vector v = eval_trajectory(traj, tm, basis, t);
    CHECK((v - f(t)).cwiseAbs().maxCoeff() < 1e-13);
  }

  Trajectory diff = subtract(traj, traj);
  CHECK(eval_trajectory(diff, tm, basis, 0.6).cwiseAbs().maxCoeff() == 0.0);
}
