#include "rlscat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rls {

namespace {

// Legendre P_n and its derivative at z via the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double z) {
  double p1 = 1.0, p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
  }
  const double dp = n * (z * p1 - p2) / (z * z - 1.0);
  return {p1, dp};
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::VectorXd x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_pair(n, z);
      dp = d;
      const double dz = p / d;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    dp = legendre_pair(n, z).second;
    x[i] = -z;
    x[n - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  return {x, w};
}

SphereGrid build_sphere_grid(int order) {
  if (order < 0) throw std::invalid_argument("build_sphere_grid: order must be >= 0");
  const int n_theta = order / 2 + 1;
  const int n_phi = order + 1;
  const auto [ct, wt] = gauss_legendre(n_theta);
  SphereGrid g;
  g.order = order;
  g.dirs.resize(3, static_cast<Eigen::Index>(n_theta) * n_phi);
  g.weights.resize(static_cast<Eigen::Index>(n_theta) * n_phi);
  const double wp = 2.0 * pi / n_phi;
  for (int it = 0; it < n_theta; ++it) {
    const double c = ct[it];
    const double s = std::sqrt(1.0 - c * c);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * pi * ip / n_phi;
      const Eigen::Index idx = static_cast<Eigen::Index>(it) * n_phi + ip;
      g.dirs.col(idx) = Vec3(s * std::cos(phi), s * std::sin(phi), c);
      g.weights[idx] = wt[it] * wp;
    }
  }
  return g;
}

VolumeGrid build_volume_grid(double r_max, int n_r, int angular_order) {
  if (!(r_max > 0.0)) throw std::invalid_argument("build_volume_grid: r_max must be > 0");
  if (n_r < 1) throw std::invalid_argument("build_volume_grid: n_r must be >= 1");
  const auto [x, w] = gauss_legendre(n_r);
  const SphereGrid sphere = build_sphere_grid(angular_order);
  const Eigen::Index n_ang = sphere.size();
  VolumeGrid g;
  g.r_max = r_max;
  g.n_r = n_r;
  g.angular_order = angular_order;
  g.nodes.resize(3, n_r * n_ang);
  g.weights.resize(n_r * n_ang);
  for (int j = 0; j < n_r; ++j) {
    const double r = 0.5 * r_max * (x[j] + 1.0);
    const double wr = 0.5 * r_max * w[j] * r * r;
    for (Eigen::Index a = 0; a < n_ang; ++a) {
      const Eigen::Index idx = static_cast<Eigen::Index>(j) * n_ang + a;
      g.nodes.col(idx) = r * sphere.dirs.col(a);
      g.weights[idx] = wr * sphere.weights[a];
    }
  }
  return g;
}

}  // namespace rls
