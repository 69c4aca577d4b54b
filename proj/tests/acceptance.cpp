// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "cli.hpp"
#include "tc/closed_form.hpp"
#include "tc/errors.hpp"
#include "tc/kernels.hpp"
#include "tc/oracle.hpp"

namespace {

using namespace tc;

constexpr long kMaxSector = 12;

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(a + (b - a) * i / (count - 1));
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Eigen::MatrixXcd exp_A_sector(const ClosedFormMatrix& u, int n, long K) {
  return probe_sector(sector_basis(n, K), [&](const JointState& s) { return u.apply(s); });
}

// 1 and 2 share the closed-form sector matrices.
std::pair<Outcome, Outcome> oracle_equivalence_and_unitarity() {
  const auto start = std::chrono::steady_clock::now();
  double deviation = 0.0;
  double unitarity = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double g : {0.2, 1.0, 2.7}) {
      const ModelParams p{n, 1.0, 1.0, g};
      for (double t : linspace(0.0, 10.0, 21)) {
        for (long K = 0; K <= kMaxSector; ++K) {
          const Eigen::MatrixXcd closed = closed_sector_matrix(p, t, K);
          const Eigen::MatrixXcd oracle = sector_unitary(p, t, K).matrix;
          const auto dim = closed.rows();
          deviation = std::max(deviation, max_abs(closed - oracle));
          unitarity = std::max(
              unitarity, max_abs(closed.adjoint() * closed - Eigen::MatrixXcd::Identity(dim, dim)));
        }
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {
      {deviation <= 1e-10 && seconds < 10.0,
       "max deviation " + sci(deviation) + " (tol 1e-10), runtime " + sci(seconds) + " s (< 10 s)"},
      {unitarity <= 1e-12, "max ||U^+U - I|| " + sci(unitarity) + " (tol 1e-12)"}};
}

Outcome algebraic_identities() {
  double relation_one = 0.0, b1_cubic = 0.0, t_orth = 0.0, block = 0.0, su2 = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (const ResidualRecord& r : identity_report(n, kMaxSector)) {
      double* slot = r.check == "relation_one"      ? &relation_one
                     : r.check == "b1_cubic"        ? &b1_cubic
                     : r.check == "t_orthogonality" ? &t_orth
                     : r.check == "block_structure" ? &block
                                                    : &su2;
      *slot = std::max(*slot, r.residual);
    }
  }
  const bool pass = relation_one <= 1e-13 && b1_cubic <= 1e-13 && t_orth <= 1e-15 &&
                    block <= 1e-14 && su2 == 0.0;
  return {pass, "A1^2 " + sci(relation_one) + " (1e-13), B1^3 " + sci(b1_cubic) + " (1e-13), T^T T " +
                    sci(t_orth) + " (1e-15), blocks " + sci(block) + " (1e-14), su(2) " + sci(su2) +
                    " (exact)"};
}

Outcome gauss_decomposition() {
  double worst = 0.0;
  int checked = 0;
  for (double theta : linspace(0.0, 10.0, 41)) {
    const GaussFactors f = gauss_factors(theta);
    const ClosedFormMatrix u = exp_A1(theta);
    for (long K = 0; K <= kMaxSector; ++K) {
      if (std::abs(std::cos(theta * std::sqrt(static_cast<double>(K)))) <= 1e-3) continue;
      const Sector sector = sector_basis(1, K);
      const Eigen::MatrixXcd product = probe_sector(sector, [&](const JointState& s) {
        return f.lower.apply(f.diagonal.apply(f.upper.apply(s)));
      });
      worst = std::max(worst, max_abs(product - exp_A_sector(u, 1, K)));
      ++checked;
    }
  }
  return {worst <= 1e-10, "max |L Dg U - exp| " + sci(worst) + " over " + std::to_string(checked) +
                              " (theta, K) points (tol 1e-10)"};
}

double schroedinger_residual(const ModelParams& p, double t, long K, double h) {
  const Eigen::MatrixXcd hk = hamiltonian_on_sector(p, sector_basis(p.n_atoms, K));
  const Eigen::MatrixXcd derivative =
      Amplitude(0.0, 1.0) * (closed_sector_matrix(p, t + h, K) - closed_sector_matrix(p, t - h, K)) /
      (2.0 * h);
  return max_abs(derivative - hk * closed_sector_matrix(p, t, K));
}

Outcome schroedinger() {
  double worst = 0.0;
  double ratio_lo = 1e9, ratio_hi = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const ModelParams p{n, 1.0, 1.0, 1.0};
    for (double t : {0.7, 3.1}) {
      for (long K = 0; K <= 4; ++K) {
        const double r1 = schroedinger_residual(p, t, K, 1e-4);
        const double r2 = schroedinger_residual(p, t, K, 0.5e-4);
        worst = std::max(worst, r1);
        ratio_lo = std::min(ratio_lo, r1 / r2);
        ratio_hi = std::max(ratio_hi, r1 / r2);
      }
    }
  }
  const bool pass = worst <= 1e-6 && ratio_lo >= 3.5 && ratio_hi <= 4.5;
  return {pass, "residual(h=1e-4) " + sci(worst) + " (tol 1e-6), halving ratio in [" + sci(ratio_lo) +
                    ", " + sci(ratio_hi) + "] (need [3.5, 4.5]); n=1..3, K<=4"};
}

Outcome group_law() {
  const std::vector<double> thetas = {0.0, 0.9, 2.3, 4.1, 7.7};
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double a : thetas) {
      for (double b : thetas) {
        const ClosedFormMatrix ua = exp_A(n, a), ub = exp_A(n, b), uab = exp_A(n, a + b);
        for (long K = 0; K <= kMaxSector; ++K) {
          worst = std::max(worst, max_abs(exp_A_sector(ua, n, K) * exp_A_sector(ub, n, K) -
                                          exp_A_sector(uab, n, K)));
        }
      }
    }
  }
  return {worst <= 1e-10, "max deviation " + sci(worst) + " over 5x5 theta grid (tol 1e-10)"};
}

Outcome physics_smoke() {
  // n = 1 vacuum Rabi period from |e,0>
  double worst_period = 0.0;
  bool period_ok = true;
  for (double g : {1.0, 2.7}) {
    const cli::TimeGrid grid{0.0, 10.0, 1000};
    const double dt = (grid.end - grid.start) / static_cast<double>(grid.steps);
    const auto rows = cli::compute_trace({1, 1.0, 1.0, g}, JointState::basis({"e", 0}), grid,
                                         cli::Method::closed, cli::worker_count());
    std::vector<double> peaks = {rows.front().t};
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
      const double p = rows[i].p_excited[0];
      if (p > 0.5 && p >= rows[i - 1].p_excited[0] && p > rows[i + 1].p_excited[0]) {
        peaks.push_back(rows[i].t);
      }
    }
    if (peaks.size() < 3) period_ok = false;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
      const double error = std::abs(peaks[i] - peaks[i - 1] - std::numbers::pi / g);
      worst_period = std::max(worst_period, error / dt);
    }
  }
  period_ok = period_ok && worst_period <= 1.0;

  double singlet = 0.0;
  const double s = 1.0 / std::sqrt(2.0);
  for (long m = 0; m <= kMaxSector; ++m) {
    JointState dark(2);
    dark.add({"eg", m}, s);
    dark.add({"ge", m}, -s);
    for (double theta : linspace(0.0, 27.0, 11)) {
      singlet = std::max(singlet, max_abs_difference(exp_A(2, theta).apply(dark), dark));
    }
  }

  double vacuum = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const BasisLabel vac{std::string(static_cast<std::size_t>(n), 'g'), 0};
    for (double t : linspace(0.0, 10.0, 21)) {
      const JointState out = evolve_closed({n, 1.3, 1.3, 2.7}, t, JointState::basis(vac));
      JointState expected = JointState::basis(vac, std::polar(1.0, 0.5 * n * 1.3 * t));
      vacuum = std::max(vacuum, max_abs_difference(out, expected));
    }
  }

  const bool pass = period_ok && singlet <= 1e-12 && vacuum <= 1e-12;
  return {pass, "Rabi period error " + sci(worst_period) + " grid steps (<= 1), singlet drift " +
                    sci(singlet) + " (1e-12), vacuum phase error " + sci(vacuum) + " (1e-12)"};
}

Outcome kernel_suite() {
  double pythagoras = 0.0;
  for (double lambda : linspace(-10.0, 50.0, 601)) {
    for (double theta : linspace(0.0, 10.0, 101)) {
      const double c = cosk(lambda, theta);
      const double sn = sinck(lambda, theta);
      // relative to the term sizes; absolute (scale 1) whenever lambda >= 0
      const double scale = std::max(1.0, c * c + std::abs(lambda) * sn * sn);
      pythagoras = std::max(pythagoras, std::abs(c * c + lambda * sn * sn - 1.0) / scale);
    }
  }
  double continuity = 0.0;
  for (double theta : linspace(0.0, 10.0, 101)) {
    const double bound = 1.0 + theta * theta * theta;
    continuity = std::max({continuity, std::abs(sinck(1e-9, theta) - theta) / bound,
                           std::abs(sinck(-1e-9, theta) - theta) / bound});
  }
  return {pythagoras <= 1e-12 && continuity <= 1e-8,
          "cosk^2 + lambda sinck^2 - 1: " + sci(pythagoras) + " (1e-12), sinck continuity " +
              sci(continuity) + " (1e-8)"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  auto [equivalence, unitarity] = oracle_equivalence_and_unitarity();
  results.emplace_back("1 oracle equivalence", equivalence);
  results.emplace_back("2 unitarity", unitarity);
  results.emplace_back("3 algebraic identities", algebraic_identities());
  results.emplace_back("4 Gauss decomposition", gauss_decomposition());
  results.emplace_back("5 Schroedinger residual", schroedinger());
  results.emplace_back("6 group law", group_law());
  results.emplace_back("7 physics smoke tests", physics_smoke());
  results.emplace_back("8 kernel suite", kernel_suite());

  int failures = 0;
  for (const auto& [name, outcome] : results) {
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
