#include "tc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tc/closed_form.hpp"
#include "tc/errors.hpp"

namespace tc {

Eigen::MatrixXcd exp_hermitian(const Eigen::MatrixXcd& hamiltonian, double t) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw UsageError("Hamiltonian must be square");
  if (hamiltonian.rows() > 64) throw UsageError("exp_hermitian supports dimension <= 64");
  const Eigen::Index dim = hamiltonian.rows();
  if (dim == 0) return hamiltonian;

  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  const double skew = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-13 * scale) throw UsageError("matrix is not Hermitian");

  const Eigen::MatrixXcd symmetric = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetric);
  if (solver.info() != Eigen::Success) throw UsageError("eigendecomposition failed");

  const Eigen::VectorXd& energies = solver.eigenvalues();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) phases(i) = std::polar(1.0, -t * energies(i));
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

SectorUnitary sector_unitary(const ModelParams& params, double t, long K) {
  params.validate();
  Sector sector = sector_basis(params.n_atoms, K);
  Eigen::MatrixXcd u = t == 0.0
      ? Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(sector.dim()),
                                   static_cast<Eigen::Index>(sector.dim()))
      : exp_hermitian(hamiltonian_on_sector(params, sector), t);
  return {std::move(sector), std::move(u), t, params};
}

JointState evolve_oracle(const ModelParams& params, double t, const JointState& state) {
  params.validate();
  if (state.n_atoms() != params.n_atoms) throw UsageError("state and params disagree on n_atoms");
  if (t == 0.0) return state;

  JointState out(params.n_atoms);
  for (long K : state.sectors()) {
    const SectorUnitary u = sector_unitary(params, t, K);
    const Eigen::VectorXcd evolved = u.matrix * to_sector_vector(state, u.sector);
    out += from_sector_vector(evolved, u.sector);
  }
  return out;
}

Eigen::MatrixXcd closed_sector_matrix(const ModelParams& params, double t, long K) {
  const Sector sector = sector_basis(params.n_atoms, K);
  return probe_sector(sector, [&](const JointState& s) { return evolve_closed(params, t, s); });
}

double compare_closed_oracle(const ModelParams& params, double t, long K) {
  const Eigen::MatrixXcd closed = closed_sector_matrix(params, t, K);
  const SectorUnitary oracle = sector_unitary(params, t, K);
  return (closed - oracle.matrix).cwiseAbs().maxCoeff();
}

namespace {

double max_abs(const GridVector& x, const GridVector& y) {
  double worst = 0.0;
  for (const auto& [key, amp] : x) {
    auto it = y.find(key);
    worst = std::max(worst, std::abs(amp - (it == y.end() ? Amplitude{} : it->second)));
  }
  for (const auto& [key, amp] : y) {
    if (!x.contains(key)) worst = std::max(worst, std::abs(amp));
  }
  return worst;
}

double relation_one_residual(long K) {
  // A_1^2 = diag(N+1, N) on the n = 1 sector K.
  double worst = 0.0;
  for (const BasisLabel& label : sector_basis(1, K).basis) {
    const JointState x = JointState::basis(label);
    const double n_value = static_cast<double>(label.photons) + (label.atoms == "e" ? 1.0 : 0.0);
    worst = std::max(worst, max_abs_difference(apply_A(apply_A(x)), n_value * x));
  }
  return worst;
}

// Reduced-basis vectors (row, photons) of total excitation K, where row r
// carries `excitations[r]` atomic excitations.
std::vector<GridVector> reduced_sector(const std::vector<int>& excitations, long K) {
  std::vector<GridVector> out;
  for (std::size_t r = 0; r < excitations.size(); ++r) {
    const long photons = K - excitations[r];
    if (photons >= 0) out.push_back(GridVector{{{static_cast<int>(r), photons}, 1.0}});
  }
  return out;
}

double b1_cubic_residual(long K) {
  const ClosedFormMatrix b1 = coupling_B1();
  ClosedFormMatrix d(3);
  auto linear = [](long x) { return 2.0 * static_cast<double>(x); };
  d.add_term(0, 0, Term{1.0, Kernel{"2(2N+3)", 2, 3, linear}, 0});
  d.add_term(1, 1, Term{1.0, Kernel{"2(2N+1)", 2, 1, linear}, 0});
  d.add_term(2, 2, Term{1.0, Kernel{"2(2N-1)", 2, -1, linear}, 0});

  double worst = 0.0;
  for (const GridVector& x : reduced_sector({2, 1, 0}, K)) {
    const GridVector once = b1.apply(x);
    worst = std::max(worst, max_abs(b1.apply(b1.apply(once)), d.apply(once)));
  }
  return worst;
}

double block_structure_residual(int n_atoms, long K) {
  const ReductionMatrix reduction = reduction_matrix(n_atoms);
  const std::vector<int> excitations = column_excitations(reduction);
  const ClosedFormMatrix blocks = reduced_coupling(n_atoms);
  const Eigen::MatrixXd& t = reduction.T;

  double worst = 0.0;
  for (const GridVector& r : reduced_sector(excitations, K)) {
    JointState x(n_atoms);
    for (const auto& [key, amp] : r) {
      for (int i = 0; i < reduction.dim; ++i) {
        if (t(i, key.first) != 0.0) {
          x.add({atoms_from_index(static_cast<std::size_t>(i), n_atoms), key.second},
                t(i, key.first) * amp);
        }
      }
    }
    const JointState coupled = apply_A(x);
    GridVector back;
    for (const auto& [label, amp] : coupled.amplitudes()) {
      const auto i = static_cast<Eigen::Index>(atomic_index(label.atoms));
      for (int k = 0; k < reduction.dim; ++k) {
        if (t(i, k) != 0.0) back[{k, label.photons}] += t(i, k) * amp;
      }
    }
    worst = std::max(worst, max_abs(back, blocks.apply(r)));
  }
  return worst;
}

double su2_residual(int n_atoms) {
  const CollectiveOperators s = collective_matrices(n_atoms);
  auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd {
    return a * b - b * a;
  };
  const double r1 = (comm(s.z, s.plus) - s.plus).cwiseAbs().maxCoeff();
  const double r2 = (comm(s.z, s.minus) + s.minus).cwiseAbs().maxCoeff();
  const double r3 = (comm(s.plus, s.minus) - 2.0 * s.z).cwiseAbs().maxCoeff();
  return std::max({r1, r2, r3});
}

}  // namespace

std::vector<ResidualRecord> identity_report(int n_atoms, long k_max) {
  check_atom_count(n_atoms);
  if (k_max < 0) throw UsageError("k_max must be nonnegative");
  std::vector<ResidualRecord> out;

  if (n_atoms == 2) {
    for (long K = 0; K <= k_max; ++K) out.push_back({"b1_cubic", n_atoms, K, b1_cubic_residual(K)});
  }
  if (n_atoms >= 2) {
    for (long K = 0; K <= k_max; ++K) {
      out.push_back({"block_structure", n_atoms, K, block_structure_residual(n_atoms, K)});
    }
  }
  if (n_atoms == 1) {
    for (long K = 0; K <= k_max; ++K) out.push_back({"relation_one", n_atoms, K, relation_one_residual(K)});
  }
  out.push_back({"su2", n_atoms, std::nullopt, su2_residual(n_atoms)});
  if (n_atoms >= 2) {
    const ReductionMatrix r = reduction_matrix(n_atoms);
    const Eigen::MatrixXd gram = r.T.transpose() * r.T;
    const double residual =
        (gram - Eigen::MatrixXd::Identity(r.dim, r.dim)).cwiseAbs().maxCoeff();
    out.push_back({"t_orthogonality", n_atoms, std::nullopt, residual});
  }
  return out;
}

}  // namespace tc
