#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tc/model.hpp"
#include "tc/state.hpp"

namespace tc::cli {

enum ExitCode : int {
  kOk = 0,
  kToleranceFailure = 1,
  kUsageError = 2,
  kResonanceViolation = 3,
};

enum class Method { closed, oracle, both };

/// `steps` intervals between start and end, i.e. steps + 1 points.
struct TimeGrid {
  double start = 0.0;
  double end = 0.0;
  long steps = 1;

  std::vector<double> points() const;
};

struct TraceRow {
  double t = 0.0;
  std::vector<double> p_excited;  // one per atom
  double mean_photons = 0.0;
  double norm = 0.0;
  std::optional<double> deviation;  // method == both
};

/// Observables of the evolved state at every grid point. With Method::both the
/// closed-form state is reported and `deviation` holds the max amplitude gap.
std::vector<TraceRow> compute_trace(const ModelParams& params, const JointState& initial,
                                    const TimeGrid& grid, Method method, unsigned threads);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows, int n_atoms);

struct SweepRow {
  double t = 0.0;
  long K = 0;
  double deviation = 0.0;  // closed vs oracle, max entrywise
  double unitarity = 0.0;  // ||U^dagger U - I||_max of the closed-form sector matrix
};

/// Rows sorted by (t, K) whatever the thread count.
std::vector<SweepRow> compute_sweep(const ModelParams& params, const TimeGrid& grid, long k_max,
                                    unsigned threads);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// 17 significant digits, scientific notation.
std::string format_number(double value);

/// Worker cap from TC_EVOLVE_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

/// Entry point of the tc_evolve tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tc::cli
