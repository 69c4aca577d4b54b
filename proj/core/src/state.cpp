#include "tc/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tc/errors.hpp"

namespace tc {

int excited_count(std::string_view atoms) {
  return static_cast<int>(std::count(atoms.begin(), atoms.end(), 'e'));
}

long excitation(const BasisLabel& label) {
  return excited_count(label.atoms) + label.photons;
}

std::size_t atomic_index(std::string_view atoms) {
  std::size_t index = 0;
  for (char c : atoms) {
    if (c != 'e' && c != 'g') throw UsageError("atomic letters must be 'e' or 'g'");
    index = (index << 1U) | (c == 'g' ? 1U : 0U);
  }
  return index;
}

std::string atoms_from_index(std::size_t index, int n_atoms) {
  std::string atoms(static_cast<std::size_t>(n_atoms), 'e');
  for (int i = n_atoms - 1; i >= 0; --i) {
    atoms[static_cast<std::size_t>(i)] = (index & 1U) ? 'g' : 'e';
    index >>= 1U;
  }
  return atoms;
}

double ladder_factor(long photons, int power) {
  if (power == 0) return 1.0;
  double product = 1.0;
  if (power > 0) {
    for (int j = 1; j <= power; ++j) product *= static_cast<double>(photons + j);
  } else {
    if (photons < -power) return 0.0;
    for (int j = 0; j < -power; ++j) product *= static_cast<double>(photons - j);
  }
  return std::sqrt(product);
}

JointState::JointState(int n_atoms) : n_atoms_(n_atoms) {
  if (n_atoms < 1) throw UsageError("a state needs at least one atom");
}

JointState JointState::basis(const BasisLabel& label, Amplitude amplitude) {
  JointState state(static_cast<int>(label.atoms.size()));
  state.add(label, amplitude);
  return state;
}

Amplitude JointState::amplitude(const BasisLabel& label) const {
  auto it = amplitudes_.find(label);
  return it == amplitudes_.end() ? Amplitude{} : it->second;
}

void JointState::check_label(const BasisLabel& label) const {
  if (static_cast<int>(label.atoms.size()) != n_atoms_) {
    throw UsageError("label '" + label.atoms + "' does not match " +
                     std::to_string(n_atoms_) + " atoms");
  }
  if (label.photons < 0) throw UsageError("photon number must be nonnegative");
  for (char c : label.atoms) {
    if (c != 'e' && c != 'g') throw UsageError("atomic letters must be 'e' or 'g'");
  }
}

void JointState::add(const BasisLabel& label, Amplitude amplitude) {
  check_label(label);
  amplitudes_[label] += amplitude;
}

double JointState::norm_squared() const {
  double sum = 0.0;
  for (const auto& [label, amp] : amplitudes_) sum += std::norm(amp);
  return sum;
}

double JointState::norm() const { return std::sqrt(norm_squared()); }

std::set<long> JointState::sectors() const {
  std::set<long> out;
  for (const auto& [label, amp] : amplitudes_) out.insert(excitation(label));
  return out;
}

JointState JointState::project_sector(long K) const {
  JointState out(n_atoms_);
  for (const auto& [label, amp] : amplitudes_) {
    if (excitation(label) == K) out.amplitudes_.emplace(label, amp);
  }
  return out;
}

JointState& JointState::operator+=(const JointState& other) {
  if (other.n_atoms_ != n_atoms_) throw UsageError("mismatched atom counts");
  for (const auto& [label, amp] : other.amplitudes_) amplitudes_[label] += amp;
  return *this;
}

JointState& JointState::operator-=(const JointState& other) {
  if (other.n_atoms_ != n_atoms_) throw UsageError("mismatched atom counts");
  for (const auto& [label, amp] : other.amplitudes_) amplitudes_[label] -= amp;
  return *this;
}

JointState& JointState::operator*=(Amplitude factor) {
  for (auto& [label, amp] : amplitudes_) amp *= factor;
  return *this;
}

JointState apply_ladder(const JointState& state, int power) {
  if (power < -3 || power > 3) throw UsageError("ladder power must satisfy |k| <= 3");
  JointState out(state.n_atoms());
  for (const auto& [label, amp] : state.amplitudes()) {
    const long target = label.photons + power;
    if (target < 0) continue;
    out.add({label.atoms, target}, ladder_factor(label.photons, power) * amp);
  }
  return out;
}

Amplitude inner(const JointState& x, const JointState& y) {
  if (x.n_atoms() != y.n_atoms()) throw UsageError("inner product of mismatched atom counts");
  Amplitude sum{};
  for (const auto& [label, amp] : x.amplitudes()) sum += std::conj(amp) * y.amplitude(label);
  return sum;
}

double max_abs_difference(const JointState& x, const JointState& y) {
  if (x.n_atoms() != y.n_atoms()) throw UsageError("mismatched atom counts");
  double worst = 0.0;
  for (const auto& [label, amp] : x.amplitudes()) {
    worst = std::max(worst, std::abs(amp - y.amplitude(label)));
  }
  for (const auto& [label, amp] : y.amplitudes()) {
    if (!x.amplitudes().contains(label)) worst = std::max(worst, std::abs(amp));
  }
  return worst;
}

}  // namespace tc
