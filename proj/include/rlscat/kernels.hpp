#pragma once

#include "rlscat/types.hpp"

#include <vector>

namespace rls {

// Normalization of the symmetric Fourier convention.
inline constexpr double fourier_norm = 0.06349363593424097;     // (2 pi)^{-3/2}
inline constexpr double inv_fourier_norm = 15.749609945722419;  // (2 pi)^{+3/2}

// First radial moment of the exponential, int_0^a e^{c t} t dt.  Multiplied
// by 4*pi it gives the ball integral of e^{c|r|}/|r|, the building block of
// the equal-volume cell averages that regularize 1/|r| singularities.
cd exp_moment(const cd& rate, double radius);

// Scalar outgoing kernel -sqrt(pi/2) exp(i sgn(lambda) kappa |r|) / |r|.
cd j_plus(const Vec3& r, const Kinematics& kin);

// Mass kernel sqrt(pi/2) e^{-m|r|} [ m beta + i (m + 1/|r|) alpha.rhat ] / |r|.
Matrix4 q_kernel(const Vec3& r, double m);

// Matrix resolvent kernel in closed form,
//   b_plus(r) = sqrt(pi/2) (e^{i s kappa t}/t) [ m beta + lambda I
//                                               + (s kappa + i/t) alpha.rhat ],
// t = |r|, s = sgn(lambda); (2 pi)^{-3/2} b_plus is the outgoing Green kernel
// of (m beta + alpha.p - lambda).
Matrix4 b_plus(const Vec3& r, const Kinematics& kin);

// Incident wave e^{i k.r} g_n(k) with the unit-norm channel spinor.
Spinor4 plane_wave(const Vec3& r, const Vec3& k, int n, double m);

// Independent evaluation of b_plus through its convolution representation
//   b_plus = q_kernel - (2 pi)^{-3/2} lambda^2 (Q * J+) - lambda J+,
// with Q * J+ computed by discrete Fourier convolution on the periodized box
// [-R, R)^3 (singular cells replaced by their equal-volume ball averages).
// The Q and J+ terms are evaluated in closed form; only the convolution term
// uses the grid (trilinear interpolation between nodes).
class ConvolutionReference {
 public:
  // middle_prefactor_scale multiplies the lambda^2 prefactor of the
  // convolution term; the default 1.0 is the kernel itself.
  ConvolutionReference(const Kinematics& kin, double box_half_width, int n_per_axis,
                       double middle_prefactor_scale = 1.0);

  Matrix4 evaluate(const Vec3& r) const;
  Matrix4 middle_term(const Vec3& r) const;  // (2 pi)^{-3/2} lambda^2 (Q * J+)(r)
  double spacing() const { return h_; }

 private:
  Kinematics kin_;
  double box_ = 0.0;
  double h_ = 0.0;
  int n_ = 0;
  std::vector<Eigen::VectorXcd> middle_;  // 16 components, n^3 values each

  cd interp(int component, const Vec3& r) const;
};

Matrix4 b_plus_convolution_reference(const Vec3& r, const Kinematics& kin,
                                     double box_half_width, int n_per_axis);

}  // namespace rls
