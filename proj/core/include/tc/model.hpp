#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tc/state.hpp"

namespace tc {

/// Hamiltonian data (hbar = 1):
///   H = omega 1 (x) a^dagger a + delta S_3 (x) 1 + g (S_+ (x) a + S_- (x) a^dagger).
struct ModelParams {
  int n_atoms = 1;
  double omega = 1.0;
  double delta = 1.0;
  double g = 1.0;

  bool resonant() const { return delta == omega; }

  /// Throws UsageError unless n_atoms is 1, 2 or 3 and all constants are finite.
  void validate() const;
};

void check_atom_count(int n_atoms);

/// Ordered basis of the excitation-K eigenspace: atomic index ascending,
/// photons = K - #e, labels with negative photon number omitted.
struct Sector {
  int n_atoms = 1;
  long K = 0;
  std::vector<BasisLabel> basis;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> index_of(const BasisLabel& label) const;
};

Sector sector_basis(int n_atoms, long K);

struct CollectiveOperators {
  Eigen::MatrixXcd plus;
  Eigen::MatrixXcd minus;
  Eigen::MatrixXcd z;  // S_3 = (1/2) sum sigma_3
};

/// Dense 2^n x 2^n collective spin operators in the atomic-index ordering.
CollectiveOperators collective_matrices(int n_atoms);

/// (S_+ (x) a + S_- (x) a^dagger) applied to `state`.
JointState apply_A(const JointState& state);

/// H applied to `state`; used to check that H never couples sectors.
JointState apply_hamiltonian(const ModelParams& params, const JointState& state);

/// Matrix of H over the sector basis (real entries, Hermitian).
Eigen::MatrixXcd hamiltonian_on_sector(const ModelParams& params, const Sector& sector);

Eigen::VectorXcd to_sector_vector(const JointState& state, const Sector& sector);
JointState from_sector_vector(const Eigen::VectorXcd& vector, const Sector& sector);

/// Matrix of a linear map restricted to a sector, built column by column by
/// applying `op` to each basis vector. Components outside the sector are
/// ignored; use leakage checks separately when that matters.
Eigen::MatrixXcd probe_sector(const Sector& sector,
                              const std::function<JointState(const JointState&)>& op);

}  // namespace tc
