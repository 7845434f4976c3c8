#pragma once

// Test problems with exact value/derivative callables, known lower bounds and
// per-order Lipschitz estimates, plus the oracle factory binding a problem to
// a noise model.

#include "datr/bounds.hpp"
#include "datr/oracle.hpp"

#include <string>
#include <vector>

namespace datr {

struct ProblemSpec {
  std::string name;
  int dimension = 0;
  int max_order = 0;  // derivative orders available
  std::function<double(const Vec&)> value;
  std::function<DerivTensor(const Vec&, int)> derivative;  // raw tensor, order l
  double f_low = 0;
  std::vector<double> lipschitz;  // L_{f,l}, orders 1..max_order (estimates on |x|_inf <= 2.5)
  Vec x0;
};

// Built-in suite: convex quadratics (n=2 and n=10), Rosenbrock, a quartic with
// a saddle at the origin, and a four-well quartic for order-3 runs. Derivative
// consistency is spot-checked by finite differences at construction.
std::vector<ProblemSpec> problem_suite();

const ProblemSpec& find_problem(const std::vector<ProblemSpec>& suite, const std::string& name);

Oracle make_oracle(const ProblemSpec& problem, NoiseKind kind, std::uint64_t seed,
                   const NoiseParams& params);

// Constants for the bound calculator: f(x0), f_low, Lipschitz constants and
// derivative norms at x0 (exact for orders 1..2, sampled lower bound above).
ProblemConstants problem_constants(const ProblemSpec& problem, const Vec& x0, int q);

// Central finite-difference consistency check; throws on mismatch.
void validate_derivatives(const ProblemSpec& problem);

}  // namespace datr
