#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace tc {

using Amplitude = std::complex<double>;

/// One element |atoms, photons> of the atomic register (x) Fock basis.
///
/// `atoms` holds one letter per atom, 'e' (excited, first component of
/// sigma_3 = diag(1,-1)) or 'g' (ground); position 0 is atom 1 and is the
/// leftmost tensor factor.
struct BasisLabel {
  std::string atoms;
  long photons = 0;

  auto operator<=>(const BasisLabel&) const = default;
};

int excited_count(std::string_view atoms);

/// Number of excited atoms plus photons.
long excitation(const BasisLabel& label);

/// Dense atomic index: lexicographic with 'e' < 'g', so "ee...e" is 0.
std::size_t atomic_index(std::string_view atoms);
std::string atoms_from_index(std::size_t index, int n_atoms);

/// sqrt(m (m-1) ... (m-|k|+1)) for k < 0, sqrt((m+1)...(m+k)) for k > 0;
/// zero when the lowering runs below the vacuum.
double ladder_factor(long photons, int power);

/// Finite superposition over BasisLabel for a fixed number of atoms.
///
/// Amplitudes are stored as given; near-zero entries are never pruned.
class JointState {
 public:
  using Map = std::map<BasisLabel, Amplitude>;

  explicit JointState(int n_atoms);

  static JointState basis(const BasisLabel& label, Amplitude amplitude = 1.0);

  int n_atoms() const { return n_atoms_; }
  const Map& amplitudes() const { return amplitudes_; }
  bool empty() const { return amplitudes_.empty(); }
  std::size_t size() const { return amplitudes_.size(); }

  /// Zero when the label is absent.
  Amplitude amplitude(const BasisLabel& label) const;

  /// Accumulates into the component for `label`. Throws UsageError when the
  /// label does not fit this state.
  void add(const BasisLabel& label, Amplitude amplitude);

  double norm_squared() const;
  double norm() const;

  /// Excitation values present in the support.
  std::set<long> sectors() const;
  JointState project_sector(long K) const;

  JointState& operator+=(const JointState& other);
  JointState& operator-=(const JointState& other);
  JointState& operator*=(Amplitude factor);

  friend JointState operator+(JointState lhs, const JointState& rhs) { return lhs += rhs; }
  friend JointState operator-(JointState lhs, const JointState& rhs) { return lhs -= rhs; }
  friend JointState operator*(Amplitude factor, JointState state) { return state *= factor; }

 private:
  void check_label(const BasisLabel& label) const;

  int n_atoms_;
  Map amplitudes_;
};

/// Applies a^|k| (k < 0) or (a^dagger)^k (k > 0); the atomic part is untouched.
JointState apply_ladder(const JointState& state, int power);

/// <x|y>, conjugate-linear in x. Throws UsageError on mismatched atom counts.
Amplitude inner(const JointState& x, const JointState& y);

/// max over the union of supports of |x - y|.
double max_abs_difference(const JointState& x, const JointState& y);

}  // namespace tc
