#pragma once

// Worst-case evaluation-count bounds instantiated from problem constants and
// noise floors: successful-iteration and total-iteration counts, the maximum
// number of accuracy tightenings, and the derivative/function evaluation
// bounds in both the named-constant and proof-chain forms.

#include "datr/oracle.hpp"
#include "datr/solver.hpp"

#include <vector>

namespace datr {

struct ProblemConstants {
  double f_x0 = 0;    // objective value at the start point
  double f_low = 0;   // global lower bound
  std::vector<double> lipschitz;      // L_{f,j}, orders 1..q at least
  std::vector<double> grad_norms_x0;  // |grad^i f(x0)|, orders 1..q at least
};

struct BoundRecord {
  double eps_min = 0;
  double denom = 0;  // max[theta_f, theta_d * eps_min, eps_min^{q+1}]
  double kappa_r = 0;
  double kappa_delta = 0;
  double Delta_f = 0;        // guaranteed exact decrease per successful iteration
  double Sk_bound = 0;       // successful iterations
  double n_it_bound = 0;     // total iterations
  double kappa_acc = 0;
  double zeta_d_min = 0;
  double i_zeta_max = 0;     // tightening count (floor form, clamped at 0)
  double kappa_A = 0, kappa_B = 0, kappa_C = 0;
  double kappa_D = 0, kappa_E = 0, kappa_S = 0;
  double f_evals_named = 0;       // kappa_A * (f0-flow)/denom + kappa_B |log eps| + kappa_C
  double deriv_evals_named = 0;   // kappa_S * (f0-flow)/denom + kappa_D |log eps| + kappa_E
  double f_evals_chain = 0;       // 2 * n_it_bound
  double deriv_evals_chain = 0;   // Sk_bound + i_zeta_max + 1
};

// Throws std::invalid_argument when the needed constants are missing.
BoundRecord theoretical_bounds(const SolverConfig& cfg, const ProblemConstants& pc,
                               const NoiseProfile& noise);

}  // namespace datr
