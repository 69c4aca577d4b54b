#include "tc/closed_form.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "tc/errors.hpp"
#include "tc/kernels.hpp"

namespace tc {

namespace {

constexpr Amplitude kI{0.0, 1.0};

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

// Skips the kernel when its coefficient is exactly zero, so a continued
// cosh/sinh that overflows never turns 0 * inf into NaN.
double weighted(double coefficient, double value) {
  return coefficient == 0.0 ? 0.0 : coefficient * value;
}

Kernel make_kernel(std::string label, long scale, long offset, std::function<double(long)> fn) {
  return Kernel{std::move(label), scale, offset, std::move(fn)};
}

}  // namespace

Kernel Kernel::constant(double value) {
  return Kernel{"const", 0, 0, [value](long) { return value; }};
}

ClosedFormMatrix::ClosedFormMatrix(int dim)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
  if (dim < 1) throw UsageError("grid dimension must be positive");
}

const std::vector<Term>& ClosedFormMatrix::entry(int row, int col) const {
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_) throw UsageError("grid index out of range");
  return entries_[static_cast<std::size_t>(row * dim_ + col)];
}

void ClosedFormMatrix::add_term(int row, int col, Term term) {
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_) throw UsageError("grid index out of range");
  entries_[static_cast<std::size_t>(row * dim_ + col)].push_back(std::move(term));
}

GridVector ClosedFormMatrix::apply(const GridVector& vector) const {
  GridVector out;
  for (const auto& [key, amp] : vector) {
    const auto [col, photons] = key;
    if (col < 0 || col >= dim_) throw UsageError("grid vector row out of range");
    for (int row = 0; row < dim_; ++row) {
      for (const Term& term : entries_[static_cast<std::size_t>(row * dim_ + col)]) {
        const long target = photons + term.ladder;
        if (target < 0) continue;
        const double factor = ladder_factor(photons, term.ladder);
        out[{row, target}] += term.coeff * term.kernel(target) * factor * amp;
      }
    }
  }
  return out;
}

JointState ClosedFormMatrix::apply(const JointState& state) const {
  const int n = state.n_atoms();
  if (dim_ != (1 << n)) throw UsageError("grid dimension does not match the state's atom count");
  GridVector in;
  for (const auto& [label, amp] : state.amplitudes()) {
    in[{static_cast<int>(atomic_index(label.atoms)), label.photons}] += amp;
  }
  JointState out(n);
  for (const auto& [key, amp] : apply(in)) {
    out.add({atoms_from_index(static_cast<std::size_t>(key.first), n), key.second}, amp);
  }
  return out;
}

ClosedFormMatrix block_diagonal(const std::vector<ClosedFormMatrix>& blocks) {
  int total = 0;
  for (const auto& b : blocks) total += b.dim();
  ClosedFormMatrix out(total);
  int base = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.dim(); ++r) {
      for (int c = 0; c < b.dim(); ++c) {
        for (const Term& term : b.entry(r, c)) out.add_term(base + r, base + c, term);
      }
    }
    base += b.dim();
  }
  return out;
}

ReductionMatrix reduction_matrix(int n_atoms) {
  check_atom_count(n_atoms);
  if (n_atoms == 1) return {2, Eigen::MatrixXd::Identity(2, 2)};

  const double r2 = 1.0 / std::sqrt(2.0);
  if (n_atoms == 2) {
    Eigen::MatrixXd t(4, 4);
    // columns: singlet, |ee>, triplet middle, |gg>
    t << 0, 1, 0, 0,
         r2, 0, r2, 0,
        -r2, 0, r2, 0,
         0, 0, 0, 1;
    return {4, t};
  }

  const double r3 = 1.0 / std::sqrt(3.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  const double two_r6 = 2.0 / std::sqrt(6.0);
  Eigen::MatrixXd t(8, 8);
  // rows: eee eeg ege egg gee geg gge ggg
  // columns 1-2 and 3-4: the two spin-1/2 doublets; 5-8: spin 3/2.
  t << 0, 0, 0, 0, 1, 0, 0, 0,
       r2, 0, r6, 0, 0, r3, 0, 0,
      -r2, 0, r6, 0, 0, r3, 0, 0,
       0, 0, 0, two_r6, 0, 0, r3, 0,
       0, 0, -two_r6, 0, 0, r3, 0, 0,
       0, r2, 0, -r6, 0, 0, r3, 0,
       0, -r2, 0, -r6, 0, 0, r3, 0,
       0, 0, 0, 0, 0, 0, 0, 1;
  return {8, t};
}

std::vector<int> column_excitations(const ReductionMatrix& reduction) {
  const int n = static_cast<int>(std::lround(std::log2(reduction.dim)));
  std::vector<int> out;
  for (int col = 0; col < reduction.dim; ++col) {
    int exc = -1;
    for (int row = 0; row < reduction.dim; ++row) {
      if (reduction.T(row, col) == 0.0) continue;
      const int e = excited_count(atoms_from_index(static_cast<std::size_t>(row), n));
      if (exc >= 0 && exc != e) throw UsageError("reduction column mixes excitation numbers");
      exc = e;
    }
    out.push_back(exc);
  }
  return out;
}

ClosedFormMatrix conjugate(const ReductionMatrix& reduction, const ClosedFormMatrix& reduced) {
  if (reduced.dim() != reduction.dim) throw UsageError("grid and reduction matrix sizes differ");
  const int dim = reduction.dim;
  const Eigen::MatrixXd& t = reduction.T;
  ClosedFormMatrix out(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        if (t(i, k) == 0.0) continue;
        for (int l = 0; l < dim; ++l) {
          const double weight = t(i, k) * t(j, l);
          if (weight == 0.0) continue;
          for (const Term& term : reduced.entry(k, l)) {
            out.add_term(i, j, Term{weight * term.coeff, term.kernel, term.ladder});
          }
        }
      }
    }
  }
  return out;
}

namespace {

void add_coupling(ClosedFormMatrix& m, int upper, double strength) {
  m.add_term(upper, upper + 1, Term{strength, Kernel::constant(1.0), -1});
  m.add_term(upper + 1, upper, Term{strength, Kernel::constant(1.0), +1});
}

}  // namespace

ClosedFormMatrix coupling_A1() {
  ClosedFormMatrix m(2);
  add_coupling(m, 0, 1.0);
  return m;
}

ClosedFormMatrix coupling_B1() {
  ClosedFormMatrix m(3);
  add_coupling(m, 0, kSqrt2);
  add_coupling(m, 1, kSqrt2);
  return m;
}

ClosedFormMatrix coupling_B2() {
  ClosedFormMatrix m(4);
  add_coupling(m, 0, kSqrt3);
  add_coupling(m, 1, 2.0);
  add_coupling(m, 2, kSqrt3);
  return m;
}

ClosedFormMatrix reduced_coupling(int n_atoms) {
  check_atom_count(n_atoms);
  switch (n_atoms) {
    case 1:
      return coupling_A1();
    case 2:
      return block_diagonal({ClosedFormMatrix(1), coupling_B1()});
    default:
      return block_diagonal({coupling_A1(), coupling_A1(), coupling_B2()});
  }
}

ClosedFormMatrix exp_A1(double theta) {
  ClosedFormMatrix m(2);
  auto cos_at = [theta](long x) { return cosk(static_cast<double>(x), theta); };
  auto sinc_at = [theta](long x) { return sinck(static_cast<double>(x), theta); };
  m.add_term(0, 0, Term{1.0, make_kernel("cos(N+1)", 1, 1, cos_at), 0});
  m.add_term(0, 1, Term{-kI, make_kernel("sinc(N+1)", 1, 1, sinc_at), -1});
  m.add_term(1, 0, Term{-kI, make_kernel("sinc(N)", 1, 0, sinc_at), +1});
  m.add_term(1, 1, Term{1.0, make_kernel("cos(N)", 1, 0, cos_at), 0});
  return m;
}

GaussFactors gauss_factors(double theta) {
  auto checked_cos = [theta](long x) {
    const double c = cosk(static_cast<double>(x), theta);
    if (std::abs(c) < kPoleThreshold) {
      throw PoleError("Gauss factor pole: cos(theta*sqrt(" + std::to_string(x) + ")) = 0");
    }
    return c;
  };
  // tan(theta sqrt(x)) / sqrt(x)
  auto tan_ratio = [theta, checked_cos](long x) {
    return sinck(static_cast<double>(x), theta) / checked_cos(x);
  };
  auto cos_at = [theta](long x) { return cosk(static_cast<double>(x), theta); };
  auto inv_cos = [checked_cos](long x) { return 1.0 / checked_cos(x); };

  GaussFactors f{ClosedFormMatrix(2), ClosedFormMatrix(2), ClosedFormMatrix(2)};
  const Kernel one = Kernel::constant(1.0);

  f.lower.add_term(0, 0, Term{1.0, one, 0});
  f.lower.add_term(1, 0, Term{-kI, make_kernel("tan(N)/sqrt(N)", 1, 0, tan_ratio), +1});
  f.lower.add_term(1, 1, Term{1.0, one, 0});

  f.diagonal.add_term(0, 0, Term{1.0, make_kernel("cos(N+1)", 1, 1, cos_at), 0});
  f.diagonal.add_term(1, 1, Term{1.0, make_kernel("1/cos(N)", 1, 0, inv_cos), 0});

  f.upper.add_term(0, 0, Term{1.0, one, 0});
  f.upper.add_term(0, 1, Term{-kI, make_kernel("tan(N+1)/sqrt(N+1)", 1, 1, tan_ratio), -1});
  f.upper.add_term(1, 1, Term{1.0, one, 0});
  return f;
}

ClosedFormMatrix exp_B1(double theta) {
  // Every kernel is written in x = 2N + c, the common spectral argument of a
  // sector: the Rabi frequency is sqrt(2x).
  auto diag_top = [theta](long x) {  // (N+2 + (N+1) cos) / (2N+3)
    const auto s = static_cast<double>(x);
    return ((s + 1.0) + weighted(s - 1.0, cosk(2.0 * s, theta))) / (2.0 * s);
  };
  auto diag_bottom = [theta](long x) {  // (N-1 + N cos) / (2N-1)
    const auto s = static_cast<double>(x);
    return ((s - 1.0) + weighted(s + 1.0, cosk(2.0 * s, theta))) / (2.0 * s);
  };
  auto corner = [theta](long x) {  // (-1 + cos) / x
    const auto s = static_cast<double>(x);
    return (-1.0 + cosk(2.0 * s, theta)) / s;
  };
  auto sine = [theta](long x) {  // sin(theta sqrt(2x)) / sqrt(x)
    return kSqrt2 * sinck(2.0 * static_cast<double>(x), theta);
  };
  auto cosine = [theta](long x) { return cosk(2.0 * static_cast<double>(x), theta); };

  ClosedFormMatrix m(3);
  m.add_term(0, 0, Term{1.0, make_kernel("b11", 2, 3, diag_top), 0});
  m.add_term(0, 1, Term{-kI, make_kernel("b12", 2, 3, sine), -1});
  m.add_term(0, 2, Term{1.0, make_kernel("b13", 2, 3, corner), -2});
  m.add_term(1, 0, Term{-kI, make_kernel("b21", 2, 1, sine), +1});
  m.add_term(1, 1, Term{1.0, make_kernel("b22", 2, 1, cosine), 0});
  m.add_term(1, 2, Term{-kI, make_kernel("b23", 2, 1, sine), -1});
  m.add_term(2, 0, Term{1.0, make_kernel("b31", 2, -1, corner), +2});
  m.add_term(2, 1, Term{-kI, make_kernel("b32", 2, -1, sine), +1});
  m.add_term(2, 2, Term{1.0, make_kernel("b33", 2, -1, diag_bottom), 0});
  return m;
}

namespace {

enum class B2Kernel { f1, f2, f3, f4, f5, h2, h3, h3_tilde, h4 };

double b2_kernel(B2Kernel kind, long m, double theta) {
  const SpectralData s = spectral(m);
  const double lp = s.lambda_plus;
  const double lm = s.lambda_minus;
  double num = 0.0;
  switch (kind) {
    case B2Kernel::f1:
      num = weighted(s.v_plus, cosk(lp, theta)) - weighted(s.v_minus, cosk(lm, theta));
      break;
    case B2Kernel::f2:
      num = weighted(s.w_plus, cosk(lp, theta)) - weighted(s.w_minus, cosk(lm, theta));
      break;
    case B2Kernel::h2:
      num = weighted(s.w_plus, sinck(lp, theta)) - weighted(s.w_minus, sinck(lm, theta));
      break;
    case B2Kernel::f3:
      num = cosk(lp, theta) - cosk(lm, theta);
      break;
    case B2Kernel::h3:
      num = sinck(lp, theta) - sinck(lm, theta);
      break;
    case B2Kernel::f4:
      num = weighted(s.v_plus, cosk(lm, theta)) - weighted(s.v_minus, cosk(lp, theta));
      break;
    case B2Kernel::h4:
      num = weighted(s.v_plus, sinck(lm, theta)) - weighted(s.v_minus, sinck(lp, theta));
      break;
    case B2Kernel::f5:
      num = weighted(s.w_plus, cosk(lm, theta)) - weighted(s.w_minus, cosk(lp, theta));
      break;
    case B2Kernel::h3_tilde:
      num = msin(lp, theta) - msin(lm, theta);
      break;
  }
  return num / (2.0 * s.sqrt_d);
}

Kernel b2(B2Kernel kind, const char* name, long shift, double theta) {
  return make_kernel(name, 1, shift, [kind, theta](long x) { return b2_kernel(kind, x, theta); });
}

}  // namespace

ClosedFormMatrix exp_B2(double theta) {
  using K = B2Kernel;
  const Amplitude r3i = -kSqrt3 * kI;
  const double two_r3 = 2.0 * kSqrt3;
  ClosedFormMatrix m(4);
  m.add_term(0, 0, Term{1.0, b2(K::f1, "f1", 2, theta), 0});
  m.add_term(0, 1, Term{r3i, b2(K::h2, "h2", 2, theta), -1});
  m.add_term(0, 2, Term{two_r3, b2(K::f3, "f3", 2, theta), -2});
  m.add_term(0, 3, Term{-6.0 * kI, b2(K::h3, "h3", 2, theta), -3});

  m.add_term(1, 0, Term{r3i, b2(K::h2, "h2", 1, theta), +1});
  m.add_term(1, 1, Term{1.0, b2(K::f2, "f2", 1, theta), 0});
  m.add_term(1, 2, Term{-2.0 * kI, b2(K::h3_tilde, "h3~", 1, theta), -1});
  m.add_term(1, 3, Term{two_r3, b2(K::f3, "f3", 1, theta), -2});

  m.add_term(2, 0, Term{two_r3, b2(K::f3, "f3", 0, theta), +2});
  m.add_term(2, 1, Term{-2.0 * kI, b2(K::h3_tilde, "h3~", 0, theta), +1});
  m.add_term(2, 2, Term{1.0, b2(K::f4, "f4", 0, theta), 0});
  m.add_term(2, 3, Term{r3i, b2(K::h4, "h4", 0, theta), -1});

  m.add_term(3, 0, Term{-6.0 * kI, b2(K::h3, "h3", -1, theta), +3});
  m.add_term(3, 1, Term{two_r3, b2(K::f3, "f3", -1, theta), +2});
  m.add_term(3, 2, Term{r3i, b2(K::h4, "h4", -1, theta), +1});
  m.add_term(3, 3, Term{1.0, b2(K::f5, "f5", -1, theta), 0});
  return m;
}

ClosedFormMatrix exp_A(int n_atoms, double theta) {
  check_atom_count(n_atoms);
  if (n_atoms == 1) return exp_A1(theta);
  ClosedFormMatrix blocks = n_atoms == 2
      ? block_diagonal({[] {
                          ClosedFormMatrix singlet(1);
                          singlet.add_term(0, 0, Term{1.0, Kernel::constant(1.0), 0});
                          return singlet;
                        }(),
                        exp_B1(theta)})
      : block_diagonal({exp_A1(theta), exp_A1(theta), exp_B2(theta)});
  return conjugate(reduction_matrix(n_atoms), blocks);
}

JointState evolve_closed(const ModelParams& params, double t, const JointState& state) {
  params.validate();
  if (state.n_atoms() != params.n_atoms) throw UsageError("state and params disagree on n_atoms");
  if (!params.resonant()) throw ResonanceError();
  if (t == 0.0) return state;

  const JointState coupled = exp_A(params.n_atoms, params.g * t).apply(state);
  const double half_n = 0.5 * params.n_atoms;
  JointState out(params.n_atoms);
  for (const auto& [label, amp] : coupled.amplitudes()) {
    const double phase = -t * params.omega *
                         (excited_count(label.atoms) - half_n + static_cast<double>(label.photons));
    out.add(label, std::polar(1.0, phase) * amp);
  }
  return out;
}

}  // namespace tc
