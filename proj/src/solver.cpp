#include "rlscat/solver.hpp"

#include "rlscat/dirac.hpp"
#include "rlscat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>
#include <utility>

namespace rls {

namespace {

void oscillation_guard(const Kinematics& kin, const VolumeGrid& grid) {
  const double phase_span = kin.kappa * grid.r_max;
  if (phase_span > 3.0 * grid.n_r)
    throw std::invalid_argument(
        "volume grid too coarse for the kernel oscillation: kappa*r_max exceeds 3*n_r");
  if (phase_span > 1.5 * grid.n_r)
    std::cerr << "[rlscat] warning: kappa*r_max = " << phase_span
              << " strains n_r = " << grid.n_r << " radial shells\n";
}

void check_channel(const Kinematics& kin, int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("channel index must be between 1 and 4");
  if ((kin.lambda > 0.0) != (n >= 3))
    throw std::invalid_argument("channel does not match the sign of the spectral parameter");
}

void check_grid(const GridFingerprint& fp, const VolumeGrid& grid) {
  if (!fp.matches(grid))
    throw std::invalid_argument("volume grid does not match the assembled operator");
}

void check_field_size(const Eigen::VectorXcd& field, const VolumeGrid& grid) {
  if (field.size() != 4 * grid.size())
    throw std::invalid_argument("field size does not match the volume grid");
}

// Integral of b_plus over the ball of volume w around its singular point:
// the alpha part is angular-odd and drops, the rest integrates to
// (2 pi)^{3/2} (m beta + lambda) int_0^a e^{i s kappa t} t dt.
Matrix4 self_cell_integral(const Kinematics& kin, double weight) {
  const double a = equivalent_ball_radius(weight);
  const cd rate = iu * (kin.sign() * kin.kappa);
  const Matrix4 core = kin.m * beta() + kin.lambda * Matrix4::Identity();
  return (inv_fourier_norm * exp_moment(rate, a)) * core;
}

Eigen::MatrixXcd to_system_matrix(DenseOperator& op) {
  if (op.matrix.rows() != op.matrix.cols() || op.matrix.rows() != 4 * op.grid.nodes)
    throw std::invalid_argument("dense operator storage does not match its grid fingerprint");
  Eigen::MatrixXcd m = std::move(op.matrix);
  m *= fourier_norm;
  m.diagonal().array() += 1.0;
  return m;
}

// sum_j w_j b_plus(r - r_j) V1(r_j) W1(r_j) field_j with the self term (index
// self_index, or any node closer than ~1e-6 cell radii) integrated over its
// equal-volume cell.
Eigen::Vector4cd scattered_sum(const Vec3& r, Eigen::Index self_index, const Kinematics& kin,
                               const VolumeGrid& grid, const FactorizedPotential& fac,
                               const Eigen::VectorXcd& field) {
  Eigen::Vector4cd acc = Eigen::Vector4cd::Zero();
  const Eigen::Index n = grid.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Vector4cd source = fac.v1w1[j] * field.segment<4>(4 * j);
    if (source.isZero(0.0)) continue;
    if (j == self_index) {
      acc += self_cell_integral(kin, grid.weights[j]) * source;
      continue;
    }
    const Vec3 d = r - grid.nodes.col(j);
    if (self_index < 0 && d.norm() < 1e-6 * equivalent_ball_radius(grid.weights[j])) {
      acc += self_cell_integral(kin, grid.weights[j]) * source;
      continue;
    }
    acc += grid.weights[j] * (b_plus(d, kin) * source);
  }
  return acc;
}

double power_iteration_radius(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  std::mt19937 rng(8675309u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = cd(gauss(rng), gauss(rng));
  z.normalize();
  double rho = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXcd y = m * z;
    const double norm = y.norm();
    if (!(norm > 0.0)) return 0.0;
    rho = norm;
    z = y / norm;
  }
  return rho;
}

}  // namespace

bool GridFingerprint::matches(const VolumeGrid& grid) const {
  return r_max == grid.r_max && n_r == grid.n_r && angular_order == grid.angular_order &&
         nodes == grid.size();
}

DenseOperator assemble(const Kinematics& kin, const PotentialSpec& potential,
                       const VolumeGrid& grid) {
  oscillation_guard(kin, grid);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  const Eigen::Index n = grid.size();
  DenseOperator op;
  op.kin = kin;
  op.grid = GridFingerprint{grid.r_max, grid.n_r, grid.angular_order, n};
  op.matrix.setZero(4 * n, 4 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Matrix4 right = fac.v1w1[j];
    if (right.isZero(0.0)) continue;
    const Vec3 rj = grid.nodes.col(j);
    const double wj = grid.weights[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j || fac.v1[i].isZero(0.0)) continue;
      const Matrix4 kernel = b_plus(grid.nodes.col(i) - rj, kin);
      op.matrix.block<4, 4>(4 * i, 4 * j) = wj * (fac.v1[i] * (kernel * right));
    }
    op.matrix.block<4, 4>(4 * j, 4 * j) =
        fac.v1[j] * (self_cell_integral(kin, wj) * right);
  }
  return op;
}

double hilbert_schmidt_norm(const DenseOperator& op, const VolumeGrid& grid) {
  check_grid(op.grid, grid);
  const Eigen::Index n = grid.size();
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double wj = grid.weights[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale = (i == j) ? 1.0 : grid.weights[i] / wj;
      total += scale * op.matrix.block<4, 4>(4 * i, 4 * j).squaredNorm();
    }
  }
  return std::sqrt(total);
}

RlsFactorization::RlsFactorization(DenseOperator op)
    : storage_(to_system_matrix(op)),
      kin_(op.kin),
      grid_(op.grid),
      lu_(storage_) {}

Eigen::MatrixXcd RlsFactorization::solve(const Eigen::MatrixXcd& rhs) const {
  if (rhs.rows() != storage_.rows())
    throw std::invalid_argument("right-hand side rows do not match the operator size");
  return lu_.solve(rhs);
}

Eigen::MatrixXcd RlsFactorization::adjoint_solve(const Eigen::MatrixXcd& rhs) const {
  if (rhs.rows() != storage_.rows())
    throw std::invalid_argument("right-hand side rows do not match the operator size");
  return lu_.adjoint().solve(rhs);
}

double RlsFactorization::rcond() const { return lu_.rcond(); }

double RlsFactorization::smallest_singular_value() const {
  const Eigen::Index n = storage_.rows();
  std::mt19937 rng(20140311u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cd(gauss(rng), gauss(rng));
  v.normalize();
  double sigma = -1.0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXcd w = lu_.adjoint().solve(v);
    const Eigen::VectorXcd u = lu_.solve(w);
    const double growth = u.norm();
    if (!(growth > 0.0)) break;
    const double estimate = 1.0 / std::sqrt(growth);
    if (sigma >= 0.0 && std::abs(estimate - sigma) <= 1e-9 * estimate) return estimate;
    sigma = estimate;
    v = u / growth;
  }
  return sigma;
}

Eigen::VectorXcd channel_rhs(const Kinematics& kin, int n, const PotentialSpec& potential,
                             const VolumeGrid& grid) {
  check_channel(kin, n);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  const Eigen::Index count = grid.size();
  Eigen::VectorXcd rhs(4 * count);
  for (Eigen::Index i = 0; i < count; ++i)
    rhs.segment<4>(4 * i) = fac.v1[i] * plane_wave(grid.nodes.col(i), kin.k, n, kin.m);
  return rhs;
}

Eigen::VectorXcd apply_rls_operator(const Kinematics& kin, const PotentialSpec& potential,
                                    const VolumeGrid& grid, const Eigen::VectorXcd& field) {
  check_field_size(field, grid);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  const Eigen::Index n = grid.size();
  Eigen::VectorXcd out = field;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector4cd acc = scattered_sum(grid.nodes.col(i), i, kin, grid, fac, field);
    out.segment<4>(4 * i) += fourier_norm * (fac.v1[i] * acc);
  }
  return out;
}

SpinorField solve_modified_rls(const Kinematics& kin, int n, const PotentialSpec& potential,
                               const VolumeGrid& grid) {
  RlsFactorization fact(assemble(kin, potential, grid));
  return solve_modified_rls(fact, n, potential, grid);
}

SpinorField solve_modified_rls(const RlsFactorization& fact, int n,
                               const PotentialSpec& potential, const VolumeGrid& grid) {
  check_channel(fact.kin(), n);
  check_grid(fact.grid(), grid);
  if (fact.rcond() < 1e-12)
    throw std::runtime_error("spectral parameter near an exceptional value: condition > 1e12");
  const Eigen::VectorXcd rhs = channel_rhs(fact.kin(), n, potential, grid);
  SpinorField psi;
  psi.values = fact.solve(rhs);
  psi.role = FieldRole::psi;
  psi.channel = n;
  psi.kin = fact.kin();
  if (!psi.values.allFinite()) throw std::runtime_error("solve produced non-finite entries");
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    const double residual =
        (apply_rls_operator(fact.kin(), potential, grid, psi.values) - rhs).norm() / rhs_norm;
    if (residual > 1e-10)
      throw std::runtime_error("solve residual exceeds 1e-10 relative tolerance");
  }
  return psi;
}

SpinorField recover_phi(const SpinorField& psi, const Kinematics& kin, int n,
                        const PotentialSpec& potential, const VolumeGrid& grid) {
  if (psi.role != FieldRole::psi)
    throw std::invalid_argument("recover_phi expects a psi-field input");
  check_channel(kin, n);
  check_field_size(psi.values, grid);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  SpinorField phi;
  phi.values.resize(psi.values.size());
  phi.role = FieldRole::phi;
  phi.channel = n;
  phi.kin = kin;
  const Eigen::Index count = grid.size();
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::Vector4cd acc = scattered_sum(grid.nodes.col(i), i, kin, grid, fac, psi.values);
    phi.values.segment<4>(4 * i) =
        plane_wave(grid.nodes.col(i), kin.k, n, kin.m) - fourier_norm * acc;
  }
  return phi;
}

Spinor4 evaluate_phi(const SpinorField& psi, const Kinematics& kin, int n,
                     const PotentialSpec& potential, const VolumeGrid& grid, const Vec3& r) {
  if (psi.role != FieldRole::psi)
    throw std::invalid_argument("evaluate_phi expects a psi-field input");
  check_channel(kin, n);
  check_field_size(psi.values, grid);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  const Eigen::Vector4cd acc = scattered_sum(r, -1, kin, grid, fac, psi.values);
  return plane_wave(r, kin.k, n, kin.m) - fourier_norm * acc;
}

BornSeriesResult born_series(const Kinematics& kin, int n, const PotentialSpec& potential,
                             const VolumeGrid& grid, int order) {
  check_channel(kin, n);
  if (order < 0) throw std::invalid_argument("series order must be nonnegative");
  oscillation_guard(kin, grid);
  const FactorizedPotential fac = factorize_on_grid(potential, grid);
  const Eigen::Index count = grid.size();

  Eigen::MatrixXcd iteration(4 * count, 4 * count);
  iteration.setZero();
  for (Eigen::Index j = 0; j < count; ++j) {
    const Matrix4 vj = fac.v1[j] * fac.v1w1[j];
    if (vj.isZero(0.0)) continue;
    const Vec3 rj = grid.nodes.col(j);
    const double wj = grid.weights[j];
    for (Eigen::Index i = 0; i < count; ++i) {
      if (i == j) continue;
      iteration.block<4, 4>(4 * i, 4 * j) =
          wj * (b_plus(grid.nodes.col(i) - rj, kin) * vj);
    }
    iteration.block<4, 4>(4 * j, 4 * j) = self_cell_integral(kin, wj) * vj;
  }
  iteration *= fourier_norm;

  BornSeriesResult result;
  Eigen::VectorXcd term(4 * count);
  for (Eigen::Index i = 0; i < count; ++i)
    term.segment<4>(4 * i) = plane_wave(grid.nodes.col(i), kin.k, n, kin.m);
  result.phi.values = term;
  result.phi.role = FieldRole::phi;
  result.phi.channel = n;
  result.phi.kin = kin;
  for (int q = 1; q <= order; ++q) {
    term = -(iteration * term).eval();
    result.phi.values += term;
    result.term_norms.push_back(term.norm());
  }
  result.spectral_radius = power_iteration_radius(iteration);
  const std::size_t terms = result.term_norms.size();
  const bool growing =
      terms >= 2 && result.term_norms[terms - 1] > result.term_norms[terms - 2];
  result.diverging = growing || result.spectral_radius >= 1.0;
  return result;
}

ExceptionalScanReport build_scan_report(std::vector<ExceptionalScanEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("scan requires at least one entry");
  std::sort(entries.begin(), entries.end(),
            [](const ExceptionalScanEntry& a, const ExceptionalScanEntry& b) {
              return a.lambda < b.lambda;
            });
  std::vector<double> sigmas;
  sigmas.reserve(entries.size());
  for (const auto& e : entries) sigmas.push_back(e.sigma_min);
  std::sort(sigmas.begin(), sigmas.end());
  const std::size_t count = sigmas.size();
  const double median = (count % 2 == 1)
                            ? sigmas[count / 2]
                            : 0.5 * (sigmas[count / 2 - 1] + sigmas[count / 2]);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool left_ok = i == 0 || entries[i].sigma_min <= entries[i - 1].sigma_min;
    const bool right_ok =
        i + 1 == entries.size() || entries[i].sigma_min <= entries[i + 1].sigma_min;
    entries[i].flagged = left_ok && right_ok && entries[i].sigma_min < 1e-3 * median;
  }
  ExceptionalScanReport report;
  report.entries = std::move(entries);
  report.median_sigma = median;
  return report;
}

ExceptionalScanReport exceptional_scan(const std::vector<double>& lambdas,
                                       const PotentialSpec& potential, const VolumeGrid& grid,
                                       double mass) {
  if (lambdas.empty()) throw std::invalid_argument("scan requires at least one spectral value");
  std::vector<ExceptionalScanEntry> entries;
  entries.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const Kinematics kin = make_kinematics(mass, lambda, Vec3::UnitZ());
    RlsFactorization fact(assemble(kin, potential, grid));
    entries.push_back({lambda, fact.smallest_singular_value(), false});
  }
  return build_scan_report(std::move(entries));
}

}  // namespace rls
