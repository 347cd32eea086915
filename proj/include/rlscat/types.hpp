#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace rls {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Spinor4 = Eigen::Vector4cd;
using SpinorPair = Eigen::Matrix<cd, 4, 2>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd iu{0.0, 1.0};

// One energy shell of the free Dirac operator: lambda^2 = kappa^2 + m^2 with
// |lambda| > m.  The incident momentum k satisfies |k| = kappa.  sign(lambda)
// selects the energy block: channels 1,2 live at -sqrt(k^2+m^2), channels 3,4
// at +sqrt(k^2+m^2).
struct Kinematics {
  double m = 1.0;
  double lambda = 1.5;
  double kappa = 0.0;
  Vec3 k = Vec3::UnitZ();

  int block() const { return lambda > 0.0 ? 2 : 1; }
  int sign() const { return lambda > 0.0 ? 1 : -1; }
};

// Validates m > 0, |lambda| > m and direction != 0; kappa and k are derived.
Kinematics make_kinematics(double m, double lambda, const Vec3& direction);

}  // namespace rls
