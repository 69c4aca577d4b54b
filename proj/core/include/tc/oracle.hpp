#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tc/model.hpp"
#include "tc/state.hpp"

namespace tc {

/// exp(-i t H) for Hermitian H by eigendecomposition. H is symmetrized first;
/// a deviation from Hermiticity above 1e-13 throws UsageError.
Eigen::MatrixXcd exp_hermitian(const Eigen::MatrixXcd& hamiltonian, double t);

struct SectorUnitary {
  Sector sector;
  Eigen::MatrixXcd matrix;
  double t = 0.0;
  ModelParams params;
};

SectorUnitary sector_unitary(const ModelParams& params, double t, long K);

/// Exact evolution for any delta: the state is split by excitation sector and
/// each part is evolved with its finite Hamiltonian.
JointState evolve_oracle(const ModelParams& params, double t, const JointState& state);

/// Matrix of evolve_closed on sector K, probed column by column.
Eigen::MatrixXcd closed_sector_matrix(const ModelParams& params, double t, long K);

/// Max entrywise deviation between closed-form and oracle sector-K unitaries.
double compare_closed_oracle(const ModelParams& params, double t, long K);

struct ResidualRecord {
  std::string check;
  int n_atoms = 1;
  std::optional<long> K;  // empty for sector-independent checks
  double residual = 0.0;
};

/// Algebraic identity residuals for one atom count, sorted by (check, K):
///   relation_one      A_1^2 = diag(N+1, N)                (n = 1)
///   b1_cubic          B_1^3 = D B_1                       (n = 2)
///   t_orthogonality   T^T T = I                           (n = 2, 3)
///   block_structure   T^T A_n T = reduced blocks          (n = 2, 3)
///   su2               [S3,S+]=S+, [S3,S-]=-S-, [S+,S-]=2S3
std::vector<ResidualRecord> identity_report(int n_atoms, long k_max = 12);

}  // namespace tc
