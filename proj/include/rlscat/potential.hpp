#pragma once

#include "rlscat/quadrature.hpp"
#include "rlscat/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rls {

enum class PotentialFamily { yukawa, gaussian, cutoff_coulomb, matrix_table };

// Matrix potential V(r) = -e nu(|r|) I4 + e alpha.A(r).  The vector part
// A(r) = vector_amplitude * nu(|r|) shares the scalar radial profile; the
// matrix_table family supplies an arbitrary Hermitian 4x4 field instead.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::yukawa;
  double strength = 0.0;  // coupling g in the radial profile
  double range = 1.0;     // decay length of the profile
  double r_cut = 0.1;     // core regularization (cutoff_coulomb)
  double charge = 1.0;    // e multiplying both terms
  Vec3 vector_amplitude = Vec3::Zero();
  std::function<Matrix4(const Vec3&)> matrix_field;  // matrix_table only

  bool is_radial() const;
};

// Scalar profile nu(r): yukawa g e^{-r/range}/r, gaussian g e^{-(r/range)^2},
// cutoff_coulomb g e^{-r/range}/max(r, r_cut).
double radial_profile(const PotentialSpec& spec, double r);

Matrix4 potential_matrix(const PotentialSpec& spec, const Vec3& r);

// Pointwise factorization V = V1 W1 V1 with V1 = |V|^{1/2} >= 0 and W1 the
// matrix sign of V (identity on ker V).  Both factors are Hermitian and
// basis-independent.
struct Factorization {
  Matrix4 v1;
  Matrix4 w1;
};
Factorization factorize(const Matrix4& v);

// V1, W1 and the product V1*W1 tabulated on a volume grid.
struct FactorizedPotential {
  std::vector<Matrix4> v1;
  std::vector<Matrix4> w1;
  std::vector<Matrix4> v1w1;
  double max_norm = 0.0;  // max over nodes of ||V(r_i)||_2
};
FactorizedPotential factorize_on_grid(const PotentialSpec& spec, const VolumeGrid& grid);

// Quadrature estimate of the Rollnik-type double integral
//   int int ||V(r)||_2 ||V(s)||_2 / |r-s|^2 dr ds,
// with an equal-volume ball rule for the diagonal cells.
double rollnik_estimate(const PotentialSpec& spec, const VolumeGrid& grid);

// Samples ||V1(r)|| |r|^{3/2} and ||V(r)|| |r|^{3.1} on |r| in [10, 1000] and
// reports whether the tails stay bounded (sampled growth factor <= 1.5).
struct DecayReport {
  bool v1_ok = false;
  bool v_ok = false;
  double v1_growth = 0.0;  // last/first sample of ||V1(r)|| |r|^{3/2}
  double v_growth = 0.0;   // last/first sample of ||V(r)|| |r|^{3.1}
};
DecayReport decay_check(const PotentialSpec& spec);

PotentialFamily family_from_name(const std::string& name);
std::string family_name(PotentialFamily family);

}  // namespace rls
