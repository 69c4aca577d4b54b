#pragma once

// Test-only references that never go through the code paths they check.

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "tc/model.hpp"
#include "tc/state.hpp"

namespace tc::testing {

/// Dense S_+ (x) a + S_- (x) a^dagger on atoms (x) Fock{0..cutoff-1}, built by
/// Kronecker products of the collective matrices. Row index = atomic * cutoff + m.
inline Eigen::MatrixXcd dense_coupling(int n_atoms, int cutoff) {
  const CollectiveOperators s = collective_matrices(n_atoms);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int m = 1; m < cutoff; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  const Eigen::MatrixXcd adag = a.adjoint();
  auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
      }
    }
    return out;
  };
  return kron(s.plus, a) + kron(s.minus, adag);
}

inline Eigen::VectorXcd to_dense(const JointState& state, int cutoff) {
  const Eigen::Index dim = (Eigen::Index{1} << state.n_atoms()) * cutoff;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (const auto& [label, amp] : state.amplitudes()) {
    v(static_cast<Eigen::Index>(atomic_index(label.atoms)) * cutoff + label.photons) += amp;
  }
  return v;
}

/// Random finite-support state with photon numbers below `max_photons`.
inline JointState random_state(std::mt19937_64& rng, int n_atoms, long max_photons, int terms) {
  std::uniform_int_distribution<std::size_t> atom_pick(0, (std::size_t{1} << n_atoms) - 1);
  std::uniform_int_distribution<long> photon_pick(0, max_photons - 1);
  std::normal_distribution<double> gauss;
  JointState s(n_atoms);
  for (int i = 0; i < terms; ++i) {
    s.add({atoms_from_index(atom_pick(rng), n_atoms), photon_pick(rng)}, {gauss(rng), gauss(rng)});
  }
  return s;
}

inline JointState normalized(JointState s) {
  const double n = s.norm();
  s *= 1.0 / n;
  return s;
}

}  // namespace tc::testing
