#include "datr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace datr {

void SolverConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SolverConfig: " + msg); };
  if (q < 1) fail("q must be >= 1");
  if (static_cast<int>(eps.size()) != q) fail("eps must have one entry per order 1..q");
  for (double e : eps)
    if (!(e > 0 && e < 1)) fail("each eps_j must lie in (0,1)");
  const double eps_min = *std::min_element(eps.begin(), eps.end());
  if (!(theta >= eps_min && theta <= 1)) fail("theta must lie in [min eps_j, 1]");
  if (!(Delta0 > 0 && Delta0 <= Delta_max)) fail("need 0 < Delta0 <= Delta_max");
  if (!(eta1 > 0 && eta1 <= eta2 && eta2 < 1)) fail("need 0 < eta1 <= eta2 < 1");
  if (!(gamma1 > 0 && gamma1 < 1 && 1 < gamma2 && gamma2 < gamma3))
    fail("need 0 < gamma1 < 1 < gamma2 < gamma3");
  if (!(gamma_zeta > 0 && gamma_zeta < 1)) fail("gamma_zeta must lie in (0,1)");
  if (!(sigma > 0 && sigma <= 1)) fail("sigma must lie in (0,1]");
  const double omega_cap = std::min(0.5 * eta1, 0.25 * (1 - eta2));
  if (!(omega > 0 && omega < omega_cap)) fail("omega must lie in (0, min[eta1/2, (1-eta2)/4])");
  if (!(kappa_zeta > std::pow(eps_min, q + 1))) fail("kappa_zeta must exceed (min eps_j)^(q+1)");
  if (!(zeta_d0 > 0 && zeta_d0 <= kappa_zeta)) fail("need 0 < zeta_d0 <= kappa_zeta");
  if (max_iterations < 1) fail("max_iterations must be >= 1");
}

SolverConfig SolverConfig::defaults(int q, double eps_all) {
  SolverConfig c;
  c.q = q;
  c.eps.assign(static_cast<std::size_t>(q), eps_all);
  c.sigma = q <= 2 ? 1.0 : 0.5;
  c.omega = 0.9 * std::min(0.5 * c.eta1, 0.25 * (1 - c.eta2));
  c.theta = std::clamp(1.0, eps_all, 1.0);
  return c;
}

std::string_view to_string(TerminationStatus s) {
  switch (s) {
    case TerminationStatus::approximate_minimizer: return "approximate-minimizer";
    case TerminationStatus::in_noise_phi: return "in-noise-phi";
    case TerminationStatus::in_noise_s: return "in-noise-s";
    case TerminationStatus::in_noise_f: return "in-noise-f";
    case TerminationStatus::budget_exhausted: return "budget-exhausted";
    case TerminationStatus::oracle_refused: return "oracle-refused";
  }
  return "?";
}

TerminationStatus termination_status_from_string(std::string_view s) {
  if (s == "approximate-minimizer") return TerminationStatus::approximate_minimizer;
  if (s == "in-noise-phi") return TerminationStatus::in_noise_phi;
  if (s == "in-noise-s") return TerminationStatus::in_noise_s;
  if (s == "in-noise-f") return TerminationStatus::in_noise_f;
  if (s == "budget-exhausted") return TerminationStatus::budget_exhausted;
  if (s == "oracle-refused") return TerminationStatus::oracle_refused;
  throw std::invalid_argument("unknown termination status: " + std::string(s));
}

double optimality_radius(double Delta_k, double theta) {
  if (!(Delta_k > 0 && theta > 0))
    throw std::invalid_argument("optimality_radius: arguments must be > 0");
  return std::min(Delta_k, theta);
}

double update_radius(double Delta_k, double rho_k, const SolverConfig& cfg) {
  if (!(Delta_k > 0)) throw std::invalid_argument("update_radius: Delta_k must be > 0");
  if (rho_k < cfg.eta1) return cfg.gamma1 * Delta_k;
  if (rho_k < cfg.eta2) return Delta_k;
  return std::min(cfg.Delta_max, cfg.gamma3 * Delta_k);
}

RhoDecision rho_accept(double fbar_x, double fbar_x_step, double dT, double eta1) {
  const double rho = (fbar_x - fbar_x_step) / dT;
  return {rho, rho >= eta1};
}

Solver::Solver(Oracle& oracle, SolverConfig cfg, Vec x0)
    : oracle_(oracle), cfg_(std::move(cfg)), x_(std::move(x0)) {
  cfg_.validate();
  if (!(oracle_.profile().theta_d < cfg_.kappa_zeta))
    throw std::invalid_argument("Solver: requires theta_d < kappa_zeta");
  if (cfg_.q >= 3 && x_.size() > 10)
    throw std::invalid_argument("Solver: dense high-order tensors restrict q >= 3 to dimension <= 10");
  Delta_ = cfg_.Delta0;
  zeta_d_ = cfg_.zeta_d0;
  report_.config = cfg_;
  report_.noise = oracle_.profile();
}

void Solver::ensure_model_fresh() {
  if (model_fresh_) return;
  auto out = oracle_.eval_derivs(x_, cfg_.q, zeta_d_);
  if (out.refused()) {
    // The CHECK gates should make this unreachable; surface as a diagnostic.
    finish(TerminationStatus::oracle_refused, 0, optimality_radius(Delta_, cfg_.theta), Delta_);
    return;
  }
  model_ = model_from_raw(x_, fbar_valid_ ? std::optional<double>(fbar_) : std::nullopt,
                          fbar_valid_ ? std::optional<double>(fbar_accuracy_) : std::nullopt,
                          *out.value, zeta_d_);
  model_fresh_ = true;
}

void Solver::tighten_accuracy() {
  ++i_zeta_;
  zeta_d_ = cfg_.zeta_d0 * std::pow(cfg_.gamma_zeta, static_cast<double>(i_zeta_));
  oracle_.count_tightening();
  model_fresh_ = false;
}

void Solver::finish(TerminationStatus status, int order, double delta, double radius) {
  done_ = true;
  report_.status = status;
  report_.order = order;
  report_.delta = delta;
  report_.radius = radius;
  report_.x_tilde = x_;
  report_.counters = oracle_.counters();
  report_.counters.accuracy_tightenings = i_zeta_;
  report_.i_zeta_final = i_zeta_;
  report_.zeta_d_final = zeta_d_;
  report_.iterations = static_cast<long>(report_.trace.size());
}

Solver::PhiResult Solver::compute_phi_decrement(int j, double delta_k) {
  const double xi = 0.5 * cfg_.sigma * cfg_.eps[static_cast<std::size_t>(j - 1)];
  for (;;) {
    ensure_model_fresh();
    if (done_) return {true, {}, 0, AccuracyStatus::terminal};
    Displacement disp = maximize_decrement(model_, j, delta_k, cfg_.sigma);
    const CheckResult res = check(delta_k, disp.decrement_value, zeta_d_, xi, j, cfg_.omega,
                                  cfg_.gamma_zeta, oracle_.profile().theta_d);
    const double dT = disp.decrement_value;
    switch (res.status) {
      case AccuracyStatus::relative:
      case AccuracyStatus::absolute:
        return {false, std::move(disp), dT, res.status};
      case AccuracyStatus::insufficient:
        tighten_accuracy();
        continue;
      case AccuracyStatus::terminal:
        finish(TerminationStatus::in_noise_phi, j, delta_k, delta_k);
        return {true, std::move(disp), dT, res.status};
    }
  }
}

Solver::Step1Result Solver::step1() {
  const double delta_k = optimality_radius(Delta_, cfg_.theta);
  double factorial = 1.0;
  for (int j = 1; j <= cfg_.q; ++j) {
    factorial *= j;
    PhiResult phi = compute_phi_decrement(j, delta_k);
    if (phi.terminated) return {true, j, {}, 0};
    const double threshold = (cfg_.sigma * cfg_.eps[static_cast<std::size_t>(j - 1)] /
                              (1.0 + cfg_.omega)) *
                             std::pow(delta_k, j) / factorial;
    if (phi.dT > threshold) return {false, j, std::move(phi.d), phi.dT};
  }
  finish(TerminationStatus::approximate_minimizer, cfg_.q, delta_k, delta_k);
  return {true, cfg_.q, {}, 0};
}

Solver::Step2Result Solver::step2(int j, const Displacement& d_kj, double dT_d) {
  const double delta_k = optimality_radius(Delta_, cfg_.theta);
  if (Delta_ <= cfg_.theta) return {false, d_kj.d, dT_d};

  Displacement current = d_kj;
  current.decrement_value = dT_d;
  double factorial = 1.0;
  for (int l = 1; l <= j; ++l) factorial *= l;
  for (;;) {
    const Vec s = compute_step(model_, j, current, Delta_);
    const double dT_s = decrement(model_, j, s);
    const double s_norm = s.norm();
    const double xi = (cfg_.sigma * cfg_.eps[static_cast<std::size_t>(j - 1)] /
                       (4.0 * (1.0 + cfg_.omega))) *
                      std::pow(cfg_.theta / std::max(cfg_.theta, s_norm), j);
    const CheckResult res = check(s_norm, dT_s, zeta_d_, xi, j, cfg_.omega, cfg_.gamma_zeta,
                                  oracle_.profile().theta_d);
    switch (res.status) {
      case AccuracyStatus::relative:
        return {false, s, dT_s};
      case AccuracyStatus::absolute:
        // Unreachable given the entry decrement bound; a hit means a broken invariant.
        throw std::logic_error("step2: accuracy check returned absolute");
      case AccuracyStatus::insufficient: {
        tighten_accuracy();
        ensure_model_fresh();
        if (done_) return {true, s, dT_s};
        current.decrement_value = decrement(model_, j, current.d);
        continue;
      }
      case AccuracyStatus::terminal:
        finish(TerminationStatus::in_noise_s, j, delta_k, s_norm);
        return {true, s, dT_s};
    }
  }
}

TerminationReport Solver::run() {
  if (done_) throw std::logic_error("Solver::run: already terminated");
  for (long k = 0; k < cfg_.max_iterations; ++k) {
    const double delta_k = optimality_radius(Delta_, cfg_.theta);

    Step1Result s1 = step1();
    if (done_) return report_;
    if (s1.j >= 3) report_.high_order_sigma_uncertified = true;

    Step2Result s2 = step2(s1.j, s1.d, s1.dT);
    if (done_) return report_;
    Vec s_k = std::move(s2.s);
    double dT_s = s2.dT;

    // Function-noise gate. With the global-step option the step is recomputed
    // as an approximate global maximizer over the full radius and re-tested.
    const double gate = oracle_.profile().theta_f / cfg_.omega;
    if (dT_s <= gate) {
      if (cfg_.enforce_global_step) {
        Vec s_g = global_step(model_, s1.j, Delta_);
        const double dT_g = decrement(model_, s1.j, s_g);
        if (dT_g > dT_s) {
          s_k = std::move(s_g);
          dT_s = dT_g;
        }
      }
      if (dT_s <= gate) {
        finish(TerminationStatus::in_noise_f, s1.j, delta_k,
               std::max(delta_k, s_k.norm()));
        return report_;
      }
    }

    // Evaluate fbar at the trial point, refresh fbar at the iterate if its
    // cached accuracy is too loose for this iteration's decrement.
    const double zeta_f = cfg_.omega * dT_s;
    const Vec x_trial = x_ + s_k;
    auto f_trial = oracle_.eval_f(x_trial, zeta_f);
    if (f_trial.refused()) {
      finish(TerminationStatus::oracle_refused, s1.j, delta_k, s_k.norm());
      return report_;
    }
    if (!fbar_valid_ || fbar_accuracy_ > zeta_f) {
      auto f_here = oracle_.eval_f(x_, zeta_f);
      if (f_here.refused()) {
        finish(TerminationStatus::oracle_refused, s1.j, delta_k, s_k.norm());
        return report_;
      }
      fbar_ = *f_here.value;
      fbar_accuracy_ = zeta_f;
      fbar_valid_ = true;
    }

    const RhoDecision dec = rho_accept(fbar_, *f_trial.value, dT_s, cfg_.eta1);

    TraceRow row;
    row.k = k;
    row.Delta = Delta_;
    row.delta = delta_k;
    row.order = s1.j;
    row.dT_d = s1.dT;
    row.dT_s = dT_s;
    row.step_norm = s_k.norm();
    row.rho = dec.rho;
    row.accepted = dec.accepted;
    row.i_zeta = i_zeta_;
    row.x = x_;
    row.step = s_k;
    report_.trace.push_back(std::move(row));

    if (dec.accepted) {
      x_ = x_trial;
      fbar_ = *f_trial.value;
      fbar_accuracy_ = zeta_f;
      model_fresh_ = false;
    }
    Delta_ = update_radius(Delta_, dec.rho, cfg_);
  }
  finish(TerminationStatus::budget_exhausted, 0, optimality_radius(Delta_, cfg_.theta), Delta_);
  return report_;
}

TerminationReport run_solver(Oracle& oracle, const SolverConfig& cfg, const Vec& x0) {
  Solver solver(oracle, cfg, x0);
  return solver.run();
}

}  // namespace datr
