#pragma once

#include "rlscat/potential.hpp"
#include "rlscat/quadrature.hpp"
#include "rlscat/types.hpp"

#include <Eigen/LU>

#include <vector>

namespace rls {

// Identifies the volume grid an operator was assembled on so downstream
// consumers can reject mismatched discretizations.
struct GridFingerprint {
  double r_max = 0.0;
  int n_r = 0;
  int angular_order = 0;
  Eigen::Index nodes = 0;

  bool matches(const VolumeGrid& grid) const;
};

// Dense Nystrom discretization of the factored resolvent operator.  Block
// (i, j), i != j, holds w_j V1(r_i) b_plus(r_i - r_j) V1(r_j) W1(r_j).  The
// diagonal block replaces the kernel by its integral over the equal-volume
// ball around the node (the angular-odd alpha part integrates to zero there),
// which keeps the weakly singular 1/|r| behaviour without a weight factor.
struct DenseOperator {
  Eigen::MatrixXcd matrix;  // 4N x 4N for N volume nodes
  Kinematics kin;
  GridFingerprint grid;
};

// Assembles the dense operator.  Rejects grids whose radial resolution cannot
// follow the kernel oscillation (kappa * r_max > 3 * n_r) and warns past
// kappa * r_max > 1.5 * n_r.
DenseOperator assemble(const Kinematics& kin, const PotentialSpec& potential,
                       const VolumeGrid& grid);

// Symmetric-weight Frobenius estimate of the kernel's Hilbert-Schmidt size.
// The kernel carries a 1/|r-s|^2 short-range part whose square is not
// integrable across the diagonal in three dimensions, so this estimate keeps
// growing slowly under grid refinement; the composed operator (matrix
// squared) has a square-integrable kernel and a finite limit, and is the
// quantity refinement studies should track.
double hilbert_schmidt_norm(const DenseOperator& op, const VolumeGrid& grid);

enum class FieldRole { psi, phi };

// Node samples of a 4-spinor field, 4 consecutive entries per volume node.
struct SpinorField {
  Eigen::VectorXcd values;
  FieldRole role = FieldRole::psi;
  int channel = 0;
  Kinematics kin;

  Spinor4 at(Eigen::Index node) const { return values.segment<4>(4 * node); }
};

// One LU factorization of the system matrix A = I + (2 pi)^{-3/2} B, shared
// by forward solves, adjoint solves, the condition estimate, and the smallest
// singular value (inverse power iteration on A^H A).  The operator storage is
// transformed and factorized in place; the object is pinned to its buffer.
class RlsFactorization {
 public:
  explicit RlsFactorization(DenseOperator op);

  RlsFactorization(const RlsFactorization&) = delete;
  RlsFactorization& operator=(const RlsFactorization&) = delete;

  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
  Eigen::MatrixXcd adjoint_solve(const Eigen::MatrixXcd& rhs) const;

  double rcond() const;
  double smallest_singular_value() const;

  const Kinematics& kin() const { return kin_; }
  const GridFingerprint& grid() const { return grid_; }
  Eigen::Index size() const { return storage_.rows(); }

 private:
  Eigen::MatrixXcd storage_;
  Kinematics kin_;
  GridFingerprint grid_;
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>> lu_;
};

// Right-hand side of the modified equation: rhs_i = e^{i k.r_i} V1(r_i) g_n.
Eigen::VectorXcd channel_rhs(const Kinematics& kin, int n, const PotentialSpec& potential,
                             const VolumeGrid& grid);

// Applies A = I + (2 pi)^{-3/2} B to node samples without storing the dense
// matrix (streaming pass over all node pairs, same cell rules as assemble).
Eigen::VectorXcd apply_rls_operator(const Kinematics& kin, const PotentialSpec& potential,
                                    const VolumeGrid& grid, const Eigen::VectorXcd& field);

// Solves the modified integral equation for channel n.  Verifies the residual
// (<= 1e-10 relative) through an independent streaming application of A and
// rejects spectral parameters near an exceptional value (condition > 1e12).
// The first overload assembles and factorizes internally.
SpinorField solve_modified_rls(const Kinematics& kin, int n, const PotentialSpec& potential,
                               const VolumeGrid& grid);
SpinorField solve_modified_rls(const RlsFactorization& fact, int n,
                               const PotentialSpec& potential, const VolumeGrid& grid);

// Reconstructs the full wave at the nodes,
//   phi_i = e^{i k.r_i} g_n - (2 pi)^{-3/2} sum_j w_j b_plus(r_i - r_j)
//           V1(r_j) W1(r_j) psi_j,
// with the self term integrated over the equal-volume cell.  The node samples
// satisfy V1(r_i) phi_i = psi_i identically.
SpinorField recover_phi(const SpinorField& psi, const Kinematics& kin, int n,
                        const PotentialSpec& potential, const VolumeGrid& grid);

// Evaluates the reconstructed wave at an arbitrary point.  Points within
// ~1e-6 cell radii of a node reuse the node rule; accuracy degrades within
// about one cell radius of a node and is best outside the source region.
Spinor4 evaluate_phi(const SpinorField& psi, const Kinematics& kin, int n,
                     const PotentialSpec& potential, const VolumeGrid& grid, const Vec3& r);

struct BornSeriesResult {
  SpinorField phi;                 // truncated Neumann iterate
  std::vector<double> term_norms;  // norm of each correction term, orders 1..order
  double spectral_radius = 0.0;    // power-iteration estimate for the iteration operator
  bool diverging = false;          // expanding iteration or growing last correction
};

// Truncated Neumann iteration phi^(q+1) = phi0 - (2 pi)^{-3/2} K phi^(q) with
// K the kernel applied to the full potential; order 0 returns the plane wave.
BornSeriesResult born_series(const Kinematics& kin, int n, const PotentialSpec& potential,
                             const VolumeGrid& grid, int order);

struct ExceptionalScanEntry {
  double lambda = 0.0;
  double sigma_min = 0.0;
  bool flagged = false;
};

struct ExceptionalScanReport {
  std::vector<ExceptionalScanEntry> entries;  // sorted by lambda
  double median_sigma = 0.0;
};

// Sorts entries by lambda and flags local minima below 1e-3 times the median
// smallest singular value.
ExceptionalScanReport build_scan_report(std::vector<ExceptionalScanEntry> entries);

// Smallest singular value of the system matrix over a list of spectral
// parameters (each must satisfy |lambda| > mass).
ExceptionalScanReport exceptional_scan(const std::vector<double>& lambdas,
                                       const PotentialSpec& potential, const VolumeGrid& grid,
                                       double mass);

}  // namespace rls
