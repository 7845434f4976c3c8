#pragma once

// Noise-aware trust-region solver with explicit dynamic accuracy: termination
// testing through decrement measures of orders 1..q, accuracy-checked step
// computation, a function-noise gate before acceptance, and radius updates.

#include "datr/check.hpp"
#include "datr/model.hpp"
#include "datr/oracle.hpp"
#include "datr/subproblem.hpp"

#include <string_view>
#include <vector>

namespace datr {

struct SolverConfig {
  int q = 1;
  std::vector<double> eps;  // per-order targets, size q, each in (0,1)
  double omega = 0.0225;
  double sigma = 1.0;
  double theta = 1.0;
  double eta1 = 0.1;
  double eta2 = 0.9;
  double gamma1 = 0.5;
  double gamma2 = 2.0;
  double gamma3 = 4.0;
  double gamma_zeta = 0.1;
  double Delta0 = 1.0;
  double Delta_max = 100.0;
  double kappa_zeta = 0.1;
  double zeta_d0 = 0.1;
  bool enforce_global_step = false;
  long max_iterations = 1000000;

  void validate() const;  // throws std::invalid_argument

  // Conventional defaults for a given order and uniform accuracy target.
  static SolverConfig defaults(int q, double eps_all);
};

enum class TerminationStatus {
  approximate_minimizer,
  in_noise_phi,
  in_noise_s,
  in_noise_f,
  budget_exhausted,  // safeguard only, never produced in conformant runs
  oracle_refused,    // diagnostic only, see TerminationReport
};

std::string_view to_string(TerminationStatus s);
TerminationStatus termination_status_from_string(std::string_view s);

struct TraceRow {
  long k = 0;
  double Delta = 0;   // radius at the start of the iteration
  double delta = 0;   // optimality radius used
  int order = 0;      // model degree j chosen by the termination test
  double dT_d = 0;    // decrement at the optimality displacement
  double dT_s = 0;    // decrement at the trial step
  double step_norm = 0;
  double rho = 0;
  bool accepted = false;
  long i_zeta = 0;    // tightenings so far, end of iteration
  Vec x;              // iterate at the start of the iteration
  Vec step;           // trial step s_k
};

struct TerminationReport {
  TerminationStatus status = TerminationStatus::budget_exhausted;
  int order = 0;
  double delta = 0;
  double radius = 0;
  Vec x_tilde;
  EvalCounters counters;
  long iterations = 0;  // completed iterations
  long i_zeta_final = 0;
  double zeta_d_final = 0;
  bool high_order_sigma_uncertified = false;  // some iteration ran with j >= 3
  std::vector<TraceRow> trace;
  SolverConfig config;    // configuration the run used
  NoiseProfile noise;     // oracle floors the run saw
};

// delta_k = min(Delta_k, theta).
double optimality_radius(double Delta_k, double theta);

// Radius update: gamma1*Delta below eta1, keep in [eta1, eta2), grow by gamma3
// capped at Delta_max above.
double update_radius(double Delta_k, double rho_k, const SolverConfig& cfg);

// Acceptance ratio and test.
struct RhoDecision {
  double rho;
  bool accepted;
};
RhoDecision rho_accept(double fbar_x, double fbar_x_step, double dT, double eta1);

class Solver {
 public:
  Solver(Oracle& oracle, SolverConfig cfg, Vec x0);

  TerminationReport run();

  // Stepwise entry points, primarily for tests; run() composes these.
  struct PhiResult {
    bool terminated = false;      // the whole solve terminated inside the loop
    Displacement d;
    double dT = 0;
    AccuracyStatus accuracy = AccuracyStatus::relative;
  };
  PhiResult compute_phi_decrement(int j, double delta_k);

  struct Step1Result {
    bool terminated = false;
    int j = 0;
    Displacement d;
    double dT = 0;
  };
  Step1Result step1();

  struct Step2Result {
    bool terminated = false;
    Vec s;
    double dT = 0;
  };
  Step2Result step2(int j, const Displacement& d_kj, double dT_d);

  const TerminationReport& report() const { return report_; }
  const Vec& x() const { return x_; }
  double Delta() const { return Delta_; }
  long i_zeta() const { return i_zeta_; }
  double zeta_d() const { return zeta_d_; }

 private:
  void ensure_model_fresh();
  void tighten_accuracy();
  void finish(TerminationStatus status, int order, double delta, double radius);

  Oracle& oracle_;
  SolverConfig cfg_;
  Vec x_;
  double Delta_;
  long i_zeta_ = 0;
  double zeta_d_;
  bool model_fresh_ = false;
  TaylorModel model_;  // degree q, Taylor-coefficient tensors at accuracy zeta_d_
  bool fbar_valid_ = false;
  double fbar_ = 0;
  double fbar_accuracy_ = 0;
  bool done_ = false;
  TerminationReport report_;
};

// Convenience wrapper: construct, run, return the report.
TerminationReport run_solver(Oracle& oracle, const SolverConfig& cfg, const Vec& x0);

}  // namespace datr
