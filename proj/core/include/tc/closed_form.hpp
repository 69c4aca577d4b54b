#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tc/model.hpp"
#include "tc/state.hpp"

namespace tc {

/// Amplitudes indexed by (grid row, photon number). A grid row is either an
/// atomic index (full 2^n grids) or a reduced spin basis index.
using GridVector = std::map<std::pair<int, long>, Amplitude>;

/// Scalar function of the number operator. It is evaluated at the photon
/// number reached after the term's ladder monomial, through the affine
/// argument `scale * m + offset` (e.g. f_1(N+2) is scale 1, offset 2).
struct Kernel {
  std::string label;
  long scale = 1;
  long offset = 0;
  std::function<double(long)> at_argument;

  long argument(long photons) const { return scale * photons + offset; }
  double operator()(long photons) const { return at_argument(argument(photons)); }

  static Kernel constant(double value);
};

/// coeff * kernel(N) * ladder monomial. Ladder power follows apply_ladder:
/// negative is a^|k|, positive is (a^dagger)^k.
struct Term {
  Amplitude coeff;
  Kernel kernel;
  int ladder = 0;
};

/// Square grid of operator-valued entries, each a sum of Terms.
class ClosedFormMatrix {
 public:
  explicit ClosedFormMatrix(int dim);

  int dim() const { return dim_; }
  const std::vector<Term>& entry(int row, int col) const;
  void add_term(int row, int col, Term term);

  GridVector apply(const GridVector& vector) const;
  /// Requires dim() == 2^n_atoms; rows are atomic indices.
  JointState apply(const JointState& state) const;

 private:
  int dim_;
  std::vector<std::vector<Term>> entries_;
};

/// Block diagonal grid in the given order.
ClosedFormMatrix block_diagonal(const std::vector<ClosedFormMatrix>& blocks);

/// Real orthogonal matrix on atomic indices whose conjugation block-
/// diagonalizes A_n: diag(0, B_1) for n = 2, diag(A_1, A_1, B_2) for n = 3.
struct ReductionMatrix {
  int dim = 1;
  Eigen::MatrixXd T;
};

/// n = 1 yields the 2x2 identity; n outside {1,2,3} throws UsageError.
ReductionMatrix reduction_matrix(int n_atoms);

/// Excitation of the atomic states spanned by each column of T.
std::vector<int> column_excitations(const ReductionMatrix& reduction);

/// T * M * T^T with T's real coefficients folded into term coefficients.
ClosedFormMatrix conjugate(const ReductionMatrix& reduction, const ClosedFormMatrix& reduced);

// Coupling operators as grids with constant kernels.
ClosedFormMatrix coupling_A1();
ClosedFormMatrix coupling_B1();
ClosedFormMatrix coupling_B2();
/// Block-diagonal form of T^T A_n T: A_1 (n=1), diag(0, B_1), diag(A_1, A_1, B_2).
ClosedFormMatrix reduced_coupling(int n_atoms);

/// exp(-i theta A_1) with theta = t g.
ClosedFormMatrix exp_A1(double theta);

struct GaussFactors {
  ClosedFormMatrix lower;
  ClosedFormMatrix diagonal;
  ClosedFormMatrix upper;
};

/// lower * diagonal * upper == exp_A1(theta) away from zeros of
/// cos(theta sqrt(N)). Evaluating a factor where |cos(theta sqrt(m))| < 1e-12
/// throws PoleError.
GaussFactors gauss_factors(double theta);

inline constexpr double kPoleThreshold = 1e-12;

/// exp(-i theta B_1), the spin-1 block of the two-atom coupling.
ClosedFormMatrix exp_B1(double theta);

/// exp(-i theta B_2), the spin-3/2 block of the three-atom coupling.
ClosedFormMatrix exp_B2(double theta);

/// exp(-i theta A_n) over the full 2^n atomic grid.
ClosedFormMatrix exp_A(int n_atoms, double theta);

/// U(t) = (exp(-i t omega S_3) (x) exp(-i t omega N)) exp(-i t g A).
/// Throws ResonanceError when delta != omega. U(0) is the identity.
JointState evolve_closed(const ModelParams& params, double t, const JointState& state);

}  // namespace tc
