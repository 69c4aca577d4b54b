#include "tc/model.hpp"

#include <cmath>
#include <string>

#include "tc/errors.hpp"

namespace tc {

void check_atom_count(int n_atoms) {
  if (n_atoms < 1 || n_atoms > 3) {
    throw UsageError("n_atoms must be 1, 2 or 3 (got " + std::to_string(n_atoms) + ")");
  }
}

void ModelParams::validate() const {
  check_atom_count(n_atoms);
  if (!std::isfinite(omega) || !std::isfinite(delta) || !std::isfinite(g)) {
    throw UsageError("omega, delta and g must be finite");
  }
}

std::optional<std::size_t> Sector::index_of(const BasisLabel& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == label) return i;
  }
  return std::nullopt;
}

Sector sector_basis(int n_atoms, long K) {
  check_atom_count(n_atoms);
  if (K < 0) throw UsageError("sector excitation must be nonnegative");
  Sector sector{n_atoms, K, {}};
  const std::size_t count = std::size_t{1} << static_cast<unsigned>(n_atoms);
  for (std::size_t index = 0; index < count; ++index) {
    std::string atoms = atoms_from_index(index, n_atoms);
    const long photons = K - excited_count(atoms);
    if (photons >= 0) sector.basis.push_back({std::move(atoms), photons});
  }
  return sector;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// 1 (x) ... (x) sigma (x) ... (x) 1 with sigma at `position`.
Eigen::MatrixXcd placed(const Eigen::Matrix2cd& sigma, int position, int n_atoms) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n_atoms; ++i) {
    out = kron(out, i == position ? Eigen::MatrixXcd(sigma) : Eigen::MatrixXcd::Identity(2, 2));
  }
  return out;
}

}  // namespace

CollectiveOperators collective_matrices(int n_atoms) {
  check_atom_count(n_atoms);
  Eigen::Matrix2cd sigma_plus;
  sigma_plus << 0, 1, 0, 0;
  Eigen::Matrix2cd sigma_minus;
  sigma_minus << 0, 0, 1, 0;
  Eigen::Matrix2cd sigma_3;
  sigma_3 << 1, 0, 0, -1;

  const Eigen::Index dim = Eigen::Index{1} << n_atoms;
  CollectiveOperators ops{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim),
                          Eigen::MatrixXcd::Zero(dim, dim)};
  for (int i = 0; i < n_atoms; ++i) {
    ops.plus += placed(sigma_plus, i, n_atoms);
    ops.minus += placed(sigma_minus, i, n_atoms);
    ops.z += 0.5 * placed(sigma_3, i, n_atoms);
  }
  return ops;
}

JointState apply_A(const JointState& state) {
  JointState out(state.n_atoms());
  for (const auto& [label, amp] : state.amplitudes()) {
    for (std::size_t i = 0; i < label.atoms.size(); ++i) {
      std::string flipped = label.atoms;
      if (label.atoms[i] == 'g') {
        // sigma_+ at atom i, a on the field
        if (label.photons == 0) continue;
        flipped[i] = 'e';
        out.add({std::move(flipped), label.photons - 1}, ladder_factor(label.photons, -1) * amp);
      } else {
        flipped[i] = 'g';
        out.add({std::move(flipped), label.photons + 1}, ladder_factor(label.photons, 1) * amp);
      }
    }
  }
  return out;
}

namespace {

double diagonal_energy(const ModelParams& params, const BasisLabel& label) {
  return params.omega * static_cast<double>(label.photons) +
         params.delta * (excited_count(label.atoms) - 0.5 * params.n_atoms);
}

}  // namespace

JointState apply_hamiltonian(const ModelParams& params, const JointState& state) {
  if (state.n_atoms() != params.n_atoms) throw UsageError("state and params disagree on n_atoms");
  JointState out = params.g * apply_A(state);
  for (const auto& [label, amp] : state.amplitudes()) {
    out.add(label, diagonal_energy(params, label) * amp);
  }
  return out;
}

Eigen::MatrixXcd hamiltonian_on_sector(const ModelParams& params, const Sector& sector) {
  params.validate();
  if (sector.n_atoms != params.n_atoms) throw UsageError("sector built for a different n_atoms");
  const auto dim = static_cast<Eigen::Index>(sector.dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const BasisLabel& label = sector.basis[static_cast<std::size_t>(col)];
    h(col, col) = diagonal_energy(params, label);
    const JointState coupled = apply_A(JointState::basis(label));
    for (const auto& [target, amp] : coupled.amplitudes()) {
      const auto row = sector.index_of(target);
      if (row) h(static_cast<Eigen::Index>(*row), col) += params.g * amp;
    }
  }
  return h;
}

Eigen::VectorXcd to_sector_vector(const JointState& state, const Sector& sector) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(sector.dim()));
  for (std::size_t i = 0; i < sector.dim(); ++i) {
    v(static_cast<Eigen::Index>(i)) = state.amplitude(sector.basis[i]);
  }
  return v;
}

JointState from_sector_vector(const Eigen::VectorXcd& vector, const Sector& sector) {
  if (static_cast<std::size_t>(vector.size()) != sector.dim()) {
    throw UsageError("vector length does not match sector dimension");
  }
  JointState out(sector.n_atoms);
  for (std::size_t i = 0; i < sector.dim(); ++i) {
    out.add(sector.basis[i], vector(static_cast<Eigen::Index>(i)));
  }
  return out;
}

Eigen::MatrixXcd probe_sector(const Sector& sector,
                              const std::function<JointState(const JointState&)>& op) {
  const auto dim = static_cast<Eigen::Index>(sector.dim());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    m.col(col) = to_sector_vector(op(JointState::basis(sector.basis[static_cast<std::size_t>(col)])),
                                  sector);
  }
  return m;
}

}  // namespace tc
