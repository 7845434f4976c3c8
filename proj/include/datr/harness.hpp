#pragma once

// Experiment harness: independent brute-force optimality measures, guarantee
// verification against the status-matching termination clause, grid sweeps
// with CSV output, and the flat key=value config format.

#include "datr/problems.hpp"
#include "datr/solver.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace datr {

// Maximal Taylor decrement over a ball of the given radius, by dense grid
// search plus local polish. Exact closed form for j = 1; the grid (>= 1e5
// samples) requires dimension <= 3 for j >= 2.
double brute_force_phi(const TaylorModel& model, int j, double delta);
double brute_force_phi(const ProblemSpec& problem, const Vec& x, int j, double delta);

// Multi-start ascent lower bound on the same quantity; any dimension.
double phi_lower_bound(const ProblemSpec& problem, const Vec& x, int j, double delta, int starts);

struct GuaranteeCheck {
  double bound = 0;          // clause bound; NaN when no phi clause applies
  bool satisfied = false;
  std::string clause;
  std::array<double, 3> phi{};  // measured phi per order (NaN when not computed)
};

// Checks the optimality clause matching report.status (all lower orders
// included) using brute-force phi with a 1% slack multiplier.
GuaranteeCheck verify_guarantee(const TerminationReport& report, const ProblemSpec& problem);

struct ResultRow {
  std::string problem;
  int q = 1;
  double eps_min = 0;
  double theta_f = 0, theta_d = 0;
  std::uint64_t seed = 0;
  std::string noise_model;
  bool global_step = false;
  std::string status;
  int order = 0;
  double delta = 0, radius = 0;
  long iterations = 0, f_evals = 0, deriv_evals = 0, tightenings = 0;
  std::array<double, 3> phi_bf{};
  double guarantee_bound = 0;
  bool guarantee_satisfied = false;
  double bound_f_evals = 0, bound_deriv_evals = 0;
  double runtime_ms = 0;
};

struct RunRequest {
  const ProblemSpec* problem = nullptr;
  SolverConfig cfg;
  NoiseKind kind = NoiseKind::exact;
  NoiseParams params;
  std::uint64_t seed = 0;
  bool timing = false;
  std::optional<Vec> x0_override;  // defaults to the problem's canonical start
};

ResultRow run_single(const RunRequest& req);

struct SweepSpec {
  std::vector<std::string> problems;
  int q = 1;
  std::vector<double> eps_grid;
  std::vector<double> theta_f_grid{0.0};
  std::vector<double> theta_d_grid{0.0};
  std::vector<std::uint64_t> seeds{0};
  NoiseKind noise_model = NoiseKind::bounded;
  bool global_step = false;
  bool timing = false;
  int threads = 0;  // 0: hardware concurrency
  NoiseParams noise_params;
  std::map<std::string, std::string> config_overrides;  // SolverConfig keys
};

SweepSpec parse_sweep_spec(const std::string& path);

// One row per (problem, eps, theta_f, theta_d, seed); parallel over grid
// points, output ordered by grid index. Returns the rows and, when out_path
// is nonempty, writes the CSV file.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const std::string& out_path);

// CSV, schema 1: a `schema=1` line, `# config key=value` echo lines, a header
// line, then rows; floats carry 17 significant digits.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               const std::map<std::string, std::string>& config_echo);

struct CsvFile {
  std::vector<ResultRow> rows;
  std::map<std::string, std::string> config_echo;
};
CsvFile read_csv(const std::string& path);

// Re-runs every row of a results file and re-checks its guarantee clause.
// Returns the number of failing rows; prints one line per row to os.
int verify_results(const std::string& path, std::ostream& os);

// Flat key=value file; '#' starts a comment.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

void apply_config_overrides(SolverConfig& cfg, const std::map<std::string, std::string>& kv);

std::string format_double(double v);  // 17 significant digits

}  // namespace datr
