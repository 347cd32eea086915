#pragma once

#include "rlscat/types.hpp"

#include <cmath>
#include <utility>

namespace rls {

// Gauss-Legendre nodes and weights on [-1, 1]; exact for degree <= 2n-1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

// Quadrature on S^2, exact for spherical polynomials of degree <= order.
// Product rule: Gauss-Legendre in cos(theta) x uniform in phi.
struct SphereGrid {
  Eigen::Matrix3Xd dirs;     // unit vectors, one column per node
  Eigen::VectorXd weights;   // sum = 4*pi
  int order = 0;

  Eigen::Index size() const { return weights.size(); }
};

SphereGrid build_sphere_grid(int order);

// Product rule on the ball |r| <= r_max: Gauss-Legendre radial shells times a
// sphere rule.  Weights carry the r^2 volume factor, so sum(weights) equals
// the ball volume exactly.
struct VolumeGrid {
  Eigen::Matrix3Xd nodes;
  Eigen::VectorXd weights;
  double r_max = 0.0;
  int n_r = 0;
  int angular_order = 0;

  Eigen::Index size() const { return weights.size(); }
};

VolumeGrid build_volume_grid(double r_max, int n_r, int angular_order);

// Radius of the ball whose volume equals a quadrature cell of weight w.
inline double equivalent_ball_radius(double weight) {
  return std::cbrt(3.0 * weight / (4.0 * pi));
}

}  // namespace rls
