#include "rlscat/kernels.hpp"

#include "rlscat/dirac.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <stdexcept>

namespace rls {

namespace {

constexpr double sqrt_pi_half = 1.2533141373155002512;  // sqrt(pi/2)
constexpr double two_pi_pow_neg32 = fourier_norm;

}  // namespace

// int_0^a e^{c t} t dt = (e^{ca}(ca - 1) + 1) / c^2.
cd exp_moment(const cd& rate, double radius) {
  const cd ca = rate * radius;
  return (std::exp(ca) * (ca - 1.0) + 1.0) / (rate * rate);
}

cd j_plus(const Vec3& r, const Kinematics& kin) {
  const double t = r.norm();
  if (!(t > 0.0)) throw std::domain_error("j_plus: |r| must be positive");
  const cd phase = std::exp(iu * (kin.sign() * kin.kappa * t));
  return -sqrt_pi_half * phase / t;
}

Matrix4 q_kernel(const Vec3& r, double m) {
  const double t = r.norm();
  if (!(t > 0.0)) throw std::domain_error("q_kernel: |r| must be positive");
  const Vec3 rhat = r / t;
  const double damp = sqrt_pi_half * std::exp(-m * t) / t;
  Matrix4 q = (m * damp) * beta();
  q += (damp * (m + 1.0 / t)) * (iu * alpha_dot(rhat));
  return q;
}

Matrix4 b_plus(const Vec3& r, const Kinematics& kin) {
  const double t = r.norm();
  if (!(t > 0.0)) throw std::domain_error("b_plus: |r| must be positive");
  const Vec3 rhat = r / t;
  const double sk = kin.sign() * kin.kappa;
  const cd factor = sqrt_pi_half * std::exp(iu * (sk * t)) / t;
  Matrix4 b = kin.m * beta() + kin.lambda * Matrix4::Identity();
  b += (sk + iu / t) * alpha_dot(rhat);
  return factor * b;
}

Spinor4 plane_wave(const Vec3& r, const Vec3& k, int n, double m) {
  return std::exp(iu * k.dot(r)) * normalized_spinor(n, k, m);
}

ConvolutionReference::ConvolutionReference(const Kinematics& kin, double box_half_width,
                                           int n_per_axis, double middle_prefactor_scale)
    : kin_(kin), box_(box_half_width), n_(n_per_axis) {
  if (!(box_ > 0.0)) throw std::invalid_argument("convolution: box must be positive");
  if (n_ < 8 || n_ % 2 != 0)
    throw std::invalid_argument("convolution: n per axis must be even and >= 8");
  h_ = 2.0 * box_ / n_;

  const std::size_t n3 = static_cast<std::size_t>(n_) * n_ * n_;
  // The Q field lives on [-R, R)^3 aligned with the output; J+ is sampled in
  // wrapped layout (origin at index 0) so that index-space circular
  // convolution reproduces positions x_i - y_j.
  const auto centered = [this](int i) { return -box_ + h_ * i; };
  const auto wrapped = [this](int i) { return i < n_ / 2 ? h_ * i : h_ * i - 2.0 * box_; };

  // Equal-volume ball averages for the singular origin cells.
  const double a = h_ * std::cbrt(3.0 / (4.0 * pi));
  const cd ck = iu * (kin_.sign() * kin_.kappa);
  const cd j_origin = -sqrt_pi_half * (4.0 * pi / (h_ * h_ * h_)) * exp_moment(ck, a);
  const cd q_origin_beta =
      sqrt_pi_half * kin_.m * (4.0 * pi / (h_ * h_ * h_)) * exp_moment(cd(-kin_.m, 0.0), a);

  Eigen::VectorXcd jhat(n3);
  {
    Eigen::VectorXcd jfield(n3);
    std::size_t idx = 0;
    for (int ix = 0; ix < n_; ++ix)
      for (int iy = 0; iy < n_; ++iy)
        for (int iz = 0; iz < n_; ++iz, ++idx) {
          if (ix == 0 && iy == 0 && iz == 0) {
            jfield[idx] = j_origin;
            continue;
          }
          jfield[idx] = j_plus(Vec3(wrapped(ix), wrapped(iy), wrapped(iz)), kin_);
        }
    fftw_plan plan = fftw_plan_dft_3d(n_, n_, n_, reinterpret_cast<fftw_complex*>(jfield.data()),
                                      reinterpret_cast<fftw_complex*>(jhat.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  // One sweep tabulates all nonzero components of Q on the centered layout;
  // x = 0 sits at node (n/2, n/2, n/2) there.
  middle_.assign(16, Eigen::VectorXcd());
  const std::size_t origin = (static_cast<std::size_t>(n_ / 2) * n_ + n_ / 2) * n_ + n_ / 2;
  std::array<bool, 16> nonzero{};
  {
    std::size_t idx = 0;
    Matrix4 q;
    for (int ix = 0; ix < n_; ++ix)
      for (int iy = 0; iy < n_; ++iy)
        for (int iz = 0; iz < n_; ++iz, ++idx) {
          if (idx == origin) {
            q = Matrix4::Zero();
            q(0, 0) = q(1, 1) = q_origin_beta;
            q(2, 2) = q(3, 3) = -q_origin_beta;
          } else {
            q = q_kernel(Vec3(centered(ix), centered(iy), centered(iz)), kin_.m);
          }
          for (int comp = 0; comp < 16; ++comp) {
            const cd val = q(comp / 4, comp % 4);
            if (val == cd(0) && !nonzero[comp]) continue;
            if (!nonzero[comp]) {
              middle_[comp] = Eigen::VectorXcd::Zero(n3);
              nonzero[comp] = true;
            }
            middle_[comp][idx] = val;
          }
        }
  }

  const double conv_scale = h_ * h_ * h_ / static_cast<double>(n3);
  const cd term_scale =
      middle_prefactor_scale * two_pi_pow_neg32 * kin_.lambda * kin_.lambda * conv_scale;
  for (int comp = 0; comp < 16; ++comp) {
    if (!nonzero[comp]) continue;
    auto* data = reinterpret_cast<fftw_complex*>(middle_[comp].data());
    fftw_plan fwd = fftw_plan_dft_3d(n_, n_, n_, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    middle_[comp].array() *= jhat.array();
    fftw_plan bwd = fftw_plan_dft_3d(n_, n_, n_, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    middle_[comp] *= term_scale;
  }
}

cd ConvolutionReference::interp(int component, const Vec3& r) const {
  const Eigen::VectorXcd& field = middle_[component];
  if (field.size() == 0) return cd(0);
  double fx = (r.x() + box_) / h_;
  double fy = (r.y() + box_) / h_;
  double fz = (r.z() + box_) / h_;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const int iz = static_cast<int>(std::floor(fz));
  if (ix < 0 || iy < 0 || iz < 0 || ix + 1 >= n_ || iy + 1 >= n_ || iz + 1 >= n_)
    throw std::domain_error("convolution reference: point outside the box");
  fx -= ix;
  fy -= iy;
  fz -= iz;
  const auto at = [&](int dx, int dy, int dz) {
    const std::size_t idx =
        (static_cast<std::size_t>(ix + dx) * n_ + (iy + dy)) * n_ + (iz + dz);
    return field[idx];
  };
  cd acc = 0.0;
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const double wgt = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy) * (dz ? fz : 1.0 - fz);
        acc += wgt * at(dx, dy, dz);
      }
  return acc;
}

Matrix4 ConvolutionReference::middle_term(const Vec3& r) const {
  Matrix4 m;
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col) m(row, col) = interp(4 * row + col, r);
  return m;
}

Matrix4 ConvolutionReference::evaluate(const Vec3& r) const {
  return q_kernel(r, kin_.m) - middle_term(r) - kin_.lambda * j_plus(r, kin_) * Matrix4::Identity();
}

Matrix4 b_plus_convolution_reference(const Vec3& r, const Kinematics& kin,
                                     double box_half_width, int n_per_axis) {
  return ConvolutionReference(kin, box_half_width, n_per_axis).evaluate(r);
}

}  // namespace rls
