#include "rlscat/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace rls {

Kinematics make_kinematics(double m, double lambda, const Vec3& direction) {
  if (!(m > 0.0)) throw std::invalid_argument("kinematics: mass must be positive");
  if (!(std::abs(lambda) > m))
    throw std::invalid_argument("kinematics: |lambda| must exceed the mass");
  const double dn = direction.norm();
  if (!(dn > 0.0)) throw std::invalid_argument("kinematics: zero incident direction");
  Kinematics kin;
  kin.m = m;
  kin.lambda = lambda;
  kin.kappa = std::sqrt((std::abs(lambda) - m) * (std::abs(lambda) + m));
  kin.k = (kin.kappa / dn) * direction;
  return kin;
}

const Matrix2& pauli(int s) {
  static const Matrix2 s1 = (Matrix2() << 0, 1, 1, 0).finished();
  static const Matrix2 s2 = (Matrix2() << 0, cd(0, -1), cd(0, 1), 0).finished();
  static const Matrix2 s3 = (Matrix2() << 1, 0, 0, -1).finished();
  switch (s) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::out_of_range("pauli: index must be 1, 2 or 3");
  }
}

namespace {

Matrix4 make_alpha(int s) {
  Matrix4 a = Matrix4::Zero();
  a.block<2, 2>(0, 2) = pauli(s);
  a.block<2, 2>(2, 0) = pauli(s);
  return a;
}

}  // namespace

const Matrix4& alpha(int s) {
  static const Matrix4 a1 = make_alpha(1);
  static const Matrix4 a2 = make_alpha(2);
  static const Matrix4 a3 = make_alpha(3);
  switch (s) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    default: throw std::out_of_range("alpha: index must be 1, 2 or 3");
  }
}

const Matrix4& beta() {
  static const Matrix4 b = [] {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 2) = m(3, 3) = -1.0;
    return m;
  }();
  return b;
}

Matrix2 pauli_dot(const Vec3& v) {
  Matrix2 m;
  m(0, 0) = v.z();
  m(0, 1) = cd(v.x(), -v.y());
  m(1, 0) = cd(v.x(), v.y());
  m(1, 1) = -v.z();
  return m;
}

Matrix4 alpha_dot(const Vec3& v) {
  Matrix4 a = Matrix4::Zero();
  const Matrix2 s = pauli_dot(v);
  a.block<2, 2>(0, 2) = s;
  a.block<2, 2>(2, 0) = s;
  return a;
}

Matrix4 dirac_symbol(const Vec3& k, double m) {
  Matrix4 h = alpha_dot(k);
  h(0, 0) += m;
  h(1, 1) += m;
  h(2, 2) -= m;
  h(3, 3) -= m;
  return h;
}

Spinor4 spinor(int n, const Vec3& k, double m) {
  if (n < 1 || n > 4) throw std::out_of_range("spinor: channel must be 1..4");
  const double l3 = std::sqrt(k.squaredNorm() + m * m);
  const double denom = (n <= 2) ? (m + l3) : (m - l3);
  if (denom == 0.0) throw std::domain_error("spinor: channels 3,4 require |k| > 0");
  Spinor4 g;
  if (n == 1 || n == 3) {
    g << cd(-k.x(), k.y()) / denom, k.z() / denom, 0.0, 1.0;
  } else {
    g << -k.z() / denom, cd(-k.x(), -k.y()) / denom, 1.0, 0.0;
  }
  return g;
}

Spinor4 normalized_spinor(int n, const Vec3& k, double m) {
  if (n < 1 || n > 4) throw std::out_of_range("spinor: channel must be 1..4");
  const double l3 = std::sqrt(k.squaredNorm() + m * m);
  // l3 - m evaluated as k^2/(l3 + m) to avoid cancellation near |k| = 0.
  const double gap = k.squaredNorm() / (l3 + m);
  Spinor4 v;
  switch (n) {
    case 1: v << cd(-k.x(), k.y()), k.z(), 0.0, m + l3; break;
    case 2: v << -k.z(), cd(-k.x(), -k.y()), m + l3, 0.0; break;
    case 3: v << cd(k.x(), -k.y()), -k.z(), 0.0, gap; break;
    case 4: v << k.z(), cd(k.x(), k.y()), gap, 0.0; break;
  }
  const double nrm = v.norm();
  if (!(nrm > 0.0))
    throw std::domain_error("normalized_spinor: channels 3,4 require |k| > 0");
  return v / nrm;
}

double channel_energy(int n, const Vec3& k, double m) {
  if (n < 1 || n > 4) throw std::out_of_range("channel_energy: channel must be 1..4");
  const double l3 = std::sqrt(k.squaredNorm() + m * m);
  return (n <= 2) ? -l3 : l3;
}

SpinorPair frame(int p, const Vec3& k, double m) {
  if (p != 1 && p != 2) throw std::out_of_range("frame: block must be 1 or 2");
  SpinorPair z;
  if (p == 1) {
    z.col(0) = normalized_spinor(1, k, m);
    z.col(1) = normalized_spinor(2, k, m);
  } else {
    z.col(0) = normalized_spinor(3, k, m);
    z.col(1) = normalized_spinor(4, k, m);
  }
  return z;
}

}  // namespace rls
