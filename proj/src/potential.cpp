#include "rlscat/potential.hpp"

#include "rlscat/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace rls {

bool PotentialSpec::is_radial() const {
  return family != PotentialFamily::matrix_table && vector_amplitude.isZero(0.0);
}

double radial_profile(const PotentialSpec& spec, double r) {
  switch (spec.family) {
    case PotentialFamily::yukawa:
      return spec.strength * std::exp(-r / spec.range) / r;
    case PotentialFamily::gaussian: {
      const double u = r / spec.range;
      return spec.strength * std::exp(-u * u);
    }
    case PotentialFamily::cutoff_coulomb:
      return spec.strength * std::exp(-r / spec.range) / std::max(r, spec.r_cut);
    case PotentialFamily::matrix_table:
      throw std::logic_error("radial_profile: matrix_table has no scalar profile");
  }
  throw std::logic_error("radial_profile: unknown family");
}

Matrix4 potential_matrix(const PotentialSpec& spec, const Vec3& r) {
  if (spec.family == PotentialFamily::matrix_table) {
    if (!spec.matrix_field)
      throw std::invalid_argument("potential_matrix: matrix_table without a field");
    return spec.matrix_field(r);
  }
  const double nu = radial_profile(spec, r.norm());
  Matrix4 v = (-spec.charge * nu) * Matrix4::Identity();
  if (!spec.vector_amplitude.isZero(0.0))
    v += spec.charge * nu * alpha_dot(spec.vector_amplitude);
  return v;
}

Factorization factorize(const Matrix4& v) {
  const double scale = v.norm();
  if ((v - v.adjoint()).norm() > 1e-10 * (1.0 + scale))
    throw std::invalid_argument("factorize: potential matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix4> es(v);
  const Eigen::Vector4d d = es.eigenvalues();
  const Matrix4 u = es.eigenvectors();
  Eigen::Vector4d d1, s;
  for (int i = 0; i < 4; ++i) {
    d1[i] = std::sqrt(std::abs(d[i]));
    s[i] = (d[i] < 0.0) ? -1.0 : 1.0;
  }
  Factorization f;
  f.v1 = u * d1.asDiagonal() * u.adjoint();
  f.w1 = u * s.asDiagonal() * u.adjoint();
  return f;
}

FactorizedPotential factorize_on_grid(const PotentialSpec& spec, const VolumeGrid& grid) {
  const Eigen::Index n = grid.size();
  FactorizedPotential fp;
  fp.v1.resize(n);
  fp.w1.resize(n);
  fp.v1w1.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Matrix4 v = potential_matrix(spec, grid.nodes.col(i));
    const Factorization f = factorize(v);
    fp.v1[i] = f.v1;
    fp.w1[i] = f.w1;
    fp.v1w1[i] = f.v1 * f.w1;
    const double nrm = f.v1.operatorNorm();
    fp.max_norm = std::max(fp.max_norm, nrm * nrm);
  }
  return fp;
}

double rollnik_estimate(const PotentialSpec& spec, const VolumeGrid& grid) {
  const Eigen::Index n = grid.size();
  Eigen::VectorXd vn(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(potential_matrix(spec, grid.nodes.col(i)));
    vn[i] = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wi = grid.weights[i];
    // Equal-volume ball around the node: int_{|x|<a} |x|^{-2} dx = 4 pi a.
    const double a = std::cbrt(3.0 * wi / (4.0 * pi));
    acc += vn[i] * vn[i] * wi * (4.0 * pi * a);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (grid.nodes.col(i) - grid.nodes.col(j)).squaredNorm();
      acc += 2.0 * vn[i] * vn[j] * wi * grid.weights[j] / d2;
    }
  }
  return acc;
}

DecayReport decay_check(const PotentialSpec& spec) {
  constexpr int samples = 25;
  const double r0 = 10.0, r1 = 1000.0;
  DecayReport rep;
  double first_v1 = 0.0, last_v1 = 0.0, first_v = 0.0, last_v = 0.0;
  bool finite = true;
  for (int i = 0; i < samples; ++i) {
    const double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / (samples - 1));
    const Vec3 x(r, 0.0, 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix4> es(potential_matrix(spec, x));
    const double vn = es.eigenvalues().cwiseAbs().maxCoeff();
    const double v1n = std::sqrt(vn);
    const double a = v1n * std::pow(r, 1.5);
    const double b = vn * std::pow(r, 3.1);
    if (!std::isfinite(a) || !std::isfinite(b)) finite = false;
    if (i == 0) {
      first_v1 = a;
      first_v = b;
    }
    if (i == samples - 1) {
      last_v1 = a;
      last_v = b;
    }
  }
  rep.v1_growth = first_v1 > 0.0 ? last_v1 / first_v1 : 0.0;
  rep.v_growth = first_v > 0.0 ? last_v / first_v : 0.0;
  rep.v1_ok = finite && rep.v1_growth <= 1.5;
  rep.v_ok = finite && rep.v_growth <= 1.5;
  return rep;
}

PotentialFamily family_from_name(const std::string& name) {
  if (name == "yukawa") return PotentialFamily::yukawa;
  if (name == "gaussian") return PotentialFamily::gaussian;
  if (name == "cutoff-coulomb") return PotentialFamily::cutoff_coulomb;
  if (name == "matrix-table") return PotentialFamily::matrix_table;
  throw std::invalid_argument("unknown potential family: " + name);
}

std::string family_name(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::yukawa: return "yukawa";
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::cutoff_coulomb: return "cutoff-coulomb";
    case PotentialFamily::matrix_table: return "matrix-table";
  }
  return "unknown";
}

}  // namespace rls
