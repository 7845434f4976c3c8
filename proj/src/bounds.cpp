#include "datr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace datr {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// |log t| with the conventions log 0 = -inf used by the noiseless branches.
double abs_log(double t) {
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(t));
}

}  // namespace

BoundRecord theoretical_bounds(const SolverConfig& cfg, const ProblemConstants& pc,
                               const NoiseProfile& noise) {
  cfg.validate();
  const int q = cfg.q;
  if (static_cast<int>(pc.lipschitz.size()) < q)
    throw std::invalid_argument("theoretical_bounds: need Lipschitz constants for orders 1..q");
  if (static_cast<int>(pc.grad_norms_x0.size()) < q)
    throw std::invalid_argument("theoretical_bounds: need derivative norms at x0 for orders 1..q");
  if (!(pc.f_x0 >= pc.f_low)) throw std::invalid_argument("theoretical_bounds: f(x0) < f_low");

  BoundRecord b;
  b.eps_min = *std::min_element(cfg.eps.begin(), cfg.eps.end());
  const double gap = pc.f_x0 - pc.f_low;
  const double L_f = *std::max_element(pc.lipschitz.begin(), pc.lipschitz.begin() + q);
  const double grad_max = *std::max_element(pc.grad_norms_x0.begin(), pc.grad_norms_x0.begin() + q);

  // delta_{0,j} = min[Delta0, theta] for all orders.
  const double delta0 = std::min(cfg.Delta0, cfg.theta);
  double min_delta0_pow = delta0;
  for (int j = 2; j <= q; ++j) min_delta0_pow = std::min(min_delta0_pow, std::pow(delta0, j));

  b.kappa_r = (cfg.gamma1 * (1 - cfg.eta2) / (4.0 * std::max(1.0, L_f))) *
              std::min(cfg.theta, cfg.Delta0 * min_delta0_pow /
                                      (2.0 * q * (grad_max + cfg.kappa_zeta)));
  b.kappa_delta = b.kappa_r / (1.0 + cfg.omega);

  const double sk = cfg.sigma * b.kappa_delta;
  const double qfact = factorial(q);
  const double noisy_term = (noise.theta_d / cfg.omega) * sk * b.eps_min;
  const double noiseless_term = std::pow(sk, q + 1) * std::pow(b.eps_min, q + 1) / qfact;
  const double f_term = noise.theta_f / cfg.omega;
  b.Delta_f = (cfg.eta1 - 2.0 * cfg.omega) * std::max({noisy_term, noiseless_term, f_term});

  b.Sk_bound = gap / b.Delta_f;
  const double log_g2 = std::log(cfg.gamma2);
  b.n_it_bound = b.Sk_bound * (1.0 + std::log(cfg.gamma3) / log_g2) +
                 abs_log(sk * b.eps_min / cfg.Delta0) / log_g2;

  b.kappa_acc = cfg.sigma * cfg.omega * std::pow(sk, q) /
                (8.0 * (1.0 + cfg.omega) * std::max(1.0, std::pow(cfg.Delta_max, q)));
  b.zeta_d_min = std::max(noise.theta_d, b.kappa_acc * std::pow(b.eps_min, q + 1));

  const double log_gz = std::log(cfg.gamma_zeta);  // negative
  {
    const double branch_noise =
        noise.theta_d > 0 ? std::log(noise.theta_d / cfg.zeta_d0)
                          : -std::numeric_limits<double>::infinity();
    const double branch_eps = (q + 1) * std::log(b.eps_min) + std::log(b.kappa_acc / cfg.zeta_d0);
    b.i_zeta_max = std::max(0.0, std::floor(std::max(branch_noise, branch_eps) / log_gz));
  }

  b.denom = std::max({noise.theta_f, noise.theta_d * b.eps_min, std::pow(b.eps_min, q + 1)});

  const double growth = 1.0 + std::log(cfg.gamma3) / log_g2;
  b.kappa_A = (2.0 / (cfg.eta1 - 2.0 * cfg.omega)) *
              std::min(cfg.omega, qfact / std::pow(sk, q + 1)) * growth;
  b.kappa_B = 2.0 / log_g2;
  b.kappa_C = (2.0 / log_g2) * abs_log(sk / cfg.Delta0);
  b.kappa_D = (q + 1) / std::abs(log_gz);
  b.kappa_E = (abs_log(b.kappa_acc / cfg.zeta_d0) +
               (noise.theta_d > 0 ? abs_log(noise.theta_d / cfg.zeta_d0)
                                  : std::numeric_limits<double>::infinity())) /
                  std::abs(log_gz) +
              2.0;
  b.kappa_S = 1.0 / ((cfg.eta1 - 2.0 * cfg.omega) *
                     std::max(1.0 / cfg.omega, std::pow(sk, q + 1) / qfact));

  const double abs_log_eps = std::abs(std::log(b.eps_min));
  b.f_evals_named = b.kappa_A * gap / b.denom + b.kappa_B * abs_log_eps + b.kappa_C;
  b.deriv_evals_named = b.kappa_S * gap / b.denom + b.kappa_D * abs_log_eps + b.kappa_E;
  b.f_evals_chain = 2.0 * b.n_it_bound;
  b.deriv_evals_chain = b.Sk_bound + b.i_zeta_max + 1.0;
  return b;
}

}  // namespace datr
