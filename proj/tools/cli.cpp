#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tc/closed_form.hpp"
#include "tc/errors.hpp"
#include "tc/io.hpp"
#include "tc/oracle.hpp"

namespace tc::cli {

using nlohmann::json;

std::vector<double> TimeGrid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  const double width = end - start;
  for (long k = 0; k <= steps; ++k) {
    out.push_back(k == steps ? end : start + width * static_cast<double>(k) / static_cast<double>(steps));
  }
  return out;
}

std::string format_number(double value) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(16) << value;
  return os.str();
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TC_EVOLVE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers; the first
// exception thrown by any worker is rethrown here.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

JointState evolve(const ModelParams& params, double t, const JointState& state, Method method) {
  return method == Method::oracle ? evolve_oracle(params, t, state) : evolve_closed(params, t, state);
}

}  // namespace

std::vector<TraceRow> compute_trace(const ModelParams& params, const JointState& initial,
                                    const TimeGrid& grid, Method method, unsigned threads) {
  const std::vector<double> times = grid.points();
  std::vector<TraceRow> rows(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const double t = times[i];
    const JointState state = evolve(params, t, initial, method);
    TraceRow row;
    row.t = t;
    row.p_excited.assign(static_cast<std::size_t>(params.n_atoms), 0.0);
    for (const auto& [label, amp] : state.amplitudes()) {
      const double p = std::norm(amp);
      for (std::size_t a = 0; a < label.atoms.size(); ++a) {
        if (label.atoms[a] == 'e') row.p_excited[a] += p;
      }
      row.mean_photons += static_cast<double>(label.photons) * p;
    }
    row.norm = state.norm();
    if (method == Method::both) {
      row.deviation = max_abs_difference(state, evolve_oracle(params, t, initial));
    }
    rows[i] = std::move(row);
  });
  return rows;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows, int n_atoms) {
  const bool with_deviation = !rows.empty() && rows.front().deviation.has_value();
  os << "t";
  for (int a = 1; a <= n_atoms; ++a) os << ",P_excited_" << a;
  os << ",mean_photons,norm";
  if (with_deviation) os << ",deviation";
  os << '\n';
  for (const TraceRow& row : rows) {
    os << format_number(row.t);
    for (double p : row.p_excited) os << ',' << format_number(p);
    os << ',' << format_number(row.mean_photons) << ',' << format_number(row.norm);
    if (with_deviation) os << ',' << format_number(row.deviation.value_or(0.0));
    os << '\n';
  }
}

std::vector<SweepRow> compute_sweep(const ModelParams& params, const TimeGrid& grid, long k_max,
                                    unsigned threads) {
  if (!params.resonant()) throw ResonanceError();
  const std::vector<double> times = grid.points();
  const auto sectors = static_cast<std::size_t>(k_max + 1);
  std::vector<SweepRow> rows(times.size() * sectors);
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double t = times[i / sectors];
    const auto K = static_cast<long>(i % sectors);
    const Eigen::MatrixXcd closed = closed_sector_matrix(params, t, K);
    const Eigen::MatrixXcd oracle = sector_unitary(params, t, K).matrix;
    const auto dim = closed.rows();
    rows[i] = SweepRow{
        t, K, (closed - oracle).cwiseAbs().maxCoeff(),
        (closed.adjoint() * closed - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff()};
  });
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "t,K,deviation,unitarity\n";
  for (const SweepRow& row : rows) {
    os << format_number(row.t) << ',' << row.K << ',' << format_number(row.deviation) << ','
       << format_number(row.unitarity) << '\n';
  }
}

namespace {

struct Options {
  int n_atoms = 0;
  double omega = 1.0;
  std::optional<double> delta;
  double g = 1.0;
  std::optional<double> t;
  double t_start = 0.0;
  std::optional<double> t_end;
  long steps = 20;
  std::string state_path;
  std::string out_path;
  Method method = Method::closed;
  long k_max = 12;
  long K = 0;
  double tolerance = 1e-10;
};

class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelParams model_params(const Options& o, int n_atoms) {
  ModelParams p{n_atoms, o.omega, o.delta.value_or(o.omega), o.g};
  try {
    p.validate();
  } catch (const UsageError& e) {
    throw UsageFailure(e.what());
  }
  return p;
}

TimeGrid time_grid(const Options& o, double default_end) {
  TimeGrid grid{o.t_start, o.t_end.value_or(default_end), o.steps};
  if (grid.steps < 1) throw UsageFailure("--steps must be >= 1");
  if (grid.end < grid.start) throw UsageFailure("--t-end must be >= --t-start");
  return grid;
}

JointState load_state(const Options& o) {
  std::ifstream in(o.state_path);
  if (!in) throw UsageFailure("cannot read state file '" + o.state_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("state file is not valid JSON: ") + e.what());
  }
  return state_from_json(doc, o.n_atoms);
}

// Writes to --out when given, else to the command's standard output.
template <typename Writer>
void emit(const Options& o, std::ostream& out, Writer&& write) {
  if (o.out_path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) throw UsageFailure("cannot write '" + o.out_path + "'");
  write(file);
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n-atoms", o.n_atoms, "Number of atoms (1, 2 or 3)")->check(CLI::Range(1, 3));
  cmd->add_option("--omega", o.omega, "Field frequency");
  cmd->add_option("--delta", o.delta, "Atomic level splitting (defaults to omega)");
  cmd->add_option("--g", o.g, "Coupling constant");
  cmd->add_option("--tolerance", o.tolerance, "Pass threshold for deviations and residuals");
  cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
}

void add_grid_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-start", o.t_start, "First time point");
  cmd->add_option("--t-end", o.t_end, "Last time point");
  cmd->add_option("--steps", o.steps, "Number of intervals in the time grid");
}

void add_method_option(CLI::App* cmd, Options& o) {
  const std::map<std::string, Method> methods{
      {"closed", Method::closed}, {"oracle", Method::oracle}, {"both", Method::both}};
  cmd->add_option("--method", o.method, "closed | oracle | both")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
}

int cmd_evolve(const Options& o, std::ostream& out, std::ostream& err) {
  const JointState state = load_state(o);
  const ModelParams params = model_params(o, state.n_atoms());
  const double t = o.t.value_or(0.0);
  if (o.method != Method::oracle && !params.resonant()) throw ResonanceError();

  const JointState result = evolve(params, t, state, o.method);
  emit(o, out, [&](std::ostream& os) { os << state_to_json(result).dump(2) << '\n'; });
  if (o.method == Method::both) {
    const double deviation = max_abs_difference(result, evolve_oracle(params, t, state));
    err << json{{"max_deviation", deviation}}.dump() << '\n';
    if (!(deviation <= o.tolerance)) return kToleranceFailure;
  }
  return kOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const JointState state = load_state(o);
  const ModelParams params = model_params(o, state.n_atoms());
  if (o.method != Method::oracle && !params.resonant()) throw ResonanceError();
  const TimeGrid grid = time_grid(o, 10.0);
  const auto rows = compute_trace(params, state, grid, o.method, worker_count());
  emit(o, out, [&](std::ostream& os) { write_trace_csv(os, rows, params.n_atoms); });
  if (o.method == Method::both) {
    for (const TraceRow& row : rows) {
      if (!(row.deviation.value_or(0.0) <= o.tolerance)) return kToleranceFailure;
    }
  }
  return kOk;
}

int require_atoms(const Options& o) {
  if (o.n_atoms == 0) throw UsageFailure("--n-atoms is required");
  return o.n_atoms;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const ModelParams params = model_params(o, require_atoms(o));
  if (!params.resonant()) throw ResonanceError();
  if (o.k_max < 0) throw UsageFailure("--k-max must be >= 0");
  const std::vector<double> times = o.t ? std::vector<double>{*o.t} : time_grid(o, 10.0).points();

  json records = json::array();
  bool pass = true;
  for (double t : times) {
    for (long K = 0; K <= o.k_max; ++K) {
      const double residual = compare_closed_oracle(params, t, K);
      pass = pass && residual <= o.tolerance;
      records.push_back(
          {{"check", "closed_vs_oracle"}, {"n", params.n_atoms}, {"K", K}, {"t", t}, {"residual", residual}});
    }
  }
  emit(o, out, [&](std::ostream& os) { os << records.dump(2) << '\n'; });
  return pass ? kOk : kToleranceFailure;
}

int cmd_identities(const Options& o, std::ostream& out) {
  const int n = require_atoms(o);
  if (o.k_max < 0) throw UsageFailure("--k-max must be >= 0");
  json records = json::array();
  bool pass = true;
  for (const ResidualRecord& r : identity_report(n, o.k_max)) {
    pass = pass && r.residual <= o.tolerance;
    records.push_back(record_to_json(r));
  }
  emit(o, out, [&](std::ostream& os) { os << records.dump(2) << '\n'; });
  return pass ? kOk : kToleranceFailure;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const ModelParams params = model_params(o, require_atoms(o));
  if (!params.resonant()) throw ResonanceError();
  if (o.k_max < 0) throw UsageFailure("--k-max must be >= 0");
  const auto rows = compute_sweep(params, time_grid(o, 10.0), o.k_max, worker_count());
  emit(o, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  const bool pass = std::all_of(rows.begin(), rows.end(),
                                [&](const SweepRow& r) { return r.deviation <= o.tolerance; });
  return pass ? kOk : kToleranceFailure;
}

int cmd_sector(const Options& o, std::ostream& out) {
  const ModelParams params = model_params(o, require_atoms(o));
  if (o.K < 0) throw UsageFailure("--k must be >= 0");
  const Sector sector = sector_basis(params.n_atoms, o.K);
  const Eigen::MatrixXcd h = hamiltonian_on_sector(params, sector);
  json basis = json::array();
  for (const BasisLabel& label : sector.basis) {
    basis.push_back({{"atoms", label.atoms}, {"photons", label.photons}});
  }
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      re_row.push_back(h(i, j).real());
      im_row.push_back(h(i, j).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  const json doc{{"n", params.n_atoms}, {"K", o.K}, {"basis", basis},
                 {"hamiltonian", {{"re", re}, {"im", im}}}};
  emit(o, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tavis-Cummings evolution for 1-3 atoms: closed forms and exact sector oracle",
               "tc_evolve"};
  app.require_subcommand(1);
  Options o;

  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a state to time t, write JSON");
  add_model_options(evolve_cmd, o);
  add_method_option(evolve_cmd, o);
  evolve_cmd->add_option("--t", o.t, "Evolution time")->required();
  evolve_cmd->add_option("--state", o.state_path, "Input state JSON")->required();

  auto* trace_cmd = app.add_subcommand("trace", "Observables over a time grid, write CSV");
  add_model_options(trace_cmd, o);
  add_method_option(trace_cmd, o);
  add_grid_options(trace_cmd, o);
  trace_cmd->add_option("--state", o.state_path, "Input state JSON")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Closed form vs oracle per sector, write JSON");
  add_model_options(compare_cmd, o);
  add_method_option(compare_cmd, o);
  add_grid_options(compare_cmd, o);
  compare_cmd->add_option("--t", o.t, "Single time (overrides the grid)");
  compare_cmd->add_option("--k-max", o.k_max, "Largest excitation sector");

  auto* identities_cmd = app.add_subcommand("identities", "Algebraic identity residuals, write JSON");
  add_model_options(identities_cmd, o);
  identities_cmd->add_option("--k-max", o.k_max, "Largest excitation sector");

  auto* sweep_cmd = app.add_subcommand("sweep", "Parallel (t, K) comparison sweep, write CSV");
  add_model_options(sweep_cmd, o);
  add_grid_options(sweep_cmd, o);
  sweep_cmd->add_option("--k-max", o.k_max, "Largest excitation sector");

  auto* sector_cmd = app.add_subcommand("sector", "Dump a sector basis and Hamiltonian as JSON");
  add_model_options(sector_cmd, o);
  sector_cmd->add_option("--k", o.K, "Excitation number")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*evolve_cmd) return cmd_evolve(o, out, err);
    if (*trace_cmd) return cmd_trace(o, out);
    if (*compare_cmd) return cmd_compare(o, out);
    if (*identities_cmd) return cmd_identities(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*sector_cmd) return cmd_sector(o, out);
  } catch (const ResonanceError& e) {
    err << "error: " << e.what() << '\n';
    return kResonanceViolation;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageFailure& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace tc::cli
