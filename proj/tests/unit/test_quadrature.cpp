#include "rlscat/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace rls;

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre basics") {
  const auto [x, w] = gauss_legendre(12);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(w.minCoeff() > 0.0);
  for (int i = 0; i < 12; ++i) CHECK(x[i] == doctest::Approx(-x[11 - i]).epsilon(1e-13));
  // Exact for degree <= 2n-1.
  double acc = 0.0;
  for (int i = 0; i < 12; ++i) acc += w[i] * std::pow(x[i], 22);
  CHECK(acc == doctest::Approx(2.0 / 23.0).epsilon(1e-13));
}

TEST_CASE("sphere rule integrates low harmonics exactly") {
  const SphereGrid g = build_sphere_grid(26);
  CHECK(g.size() == 14 * 27);
  CHECK(g.weights.sum() == doctest::Approx(4.0 * pi).epsilon(1e-14));
  double quad = 0.0, lin = 0.0, mixed = 0.0, high = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Vec3 d = g.dirs.col(i);
    CHECK(std::abs(d.norm() - 1.0) <= 1e-14);
    lin += g.weights[i] * (d.x() + 2.0 * d.y() - d.z());
    quad += g.weights[i] * d.x() * d.x();
    mixed += g.weights[i] * d.x() * d.y();
    high += g.weights[i] * std::pow(d.z(), 26);
  }
  CHECK(std::abs(lin) <= 1e-13);
  CHECK(quad == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-13));
  CHECK(std::abs(mixed) <= 1e-13);
  CHECK(high == doctest::Approx(4.0 * pi / 27.0).epsilon(1e-12));
}

TEST_CASE("volume grid reproduces radial integrals") {
  const VolumeGrid g = build_volume_grid(30.0, 48, 26);
  const double ball = 4.0 / 3.0 * pi * std::pow(30.0, 3);
  CHECK(g.weights.sum() == doctest::Approx(ball).epsilon(1e-13));
  double expo = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    expo += g.weights[i] * std::exp(-g.nodes.col(i).norm());
  CHECK(std::abs(expo - 8.0 * pi) / (8.0 * pi) <= 1e-8);
}

TEST_CASE("volume grid handles anisotropic integrands") {
  const VolumeGrid g = build_volume_grid(10.0, 24, 9);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Vec3 r = g.nodes.col(i);
    acc += g.weights[i] * r.x() * r.x() * std::exp(-r.squaredNorm());
  }
  CHECK(acc == doctest::Approx(std::pow(pi, 1.5) / 2.0).epsilon(1e-9));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(build_volume_grid(-1.0, 8, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_sphere_grid(-2), std::invalid_argument);
}

}  // TEST_SUITE
