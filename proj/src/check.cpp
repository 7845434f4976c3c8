#include "datr/check.hpp"

#include "datr/model.hpp"

#include <stdexcept>

namespace datr {

std::string_view to_string(AccuracyStatus s) {
  switch (s) {
    case AccuracyStatus::relative: return "relative";
    case AccuracyStatus::absolute: return "absolute";
    case AccuracyStatus::insufficient: return "insufficient";
    case AccuracyStatus::terminal: return "terminal";
  }
  return "?";
}

CheckResult check(double delta, double dT, double zeta_d, double xi, int r, double omega,
                  double gamma_zeta, double theta_d) {
  if (!(delta > 0)) throw std::invalid_argument("check: delta must be > 0");
  if (!(zeta_d > 0)) throw std::invalid_argument("check: zeta_d must be > 0");
  if (!(xi > 0)) throw std::invalid_argument("check: xi must be > 0");
  if (r < 1) throw std::invalid_argument("check: r must be >= 1");
  if (!(omega > 0 && omega < 1)) throw std::invalid_argument("check: omega must be in (0,1)");
  if (!(gamma_zeta > 0 && gamma_zeta < 1))
    throw std::invalid_argument("check: gamma_zeta must be in (0,1)");
  if (!(theta_d >= 0)) throw std::invalid_argument("check: theta_d must be >= 0");
  if (!(dT >= 0)) throw std::invalid_argument("check: decrement must be >= 0");

  const double err_budget = zeta_d * sum_delta_powers(r, delta);
  if (dT > 0 && err_budget <= omega * dT) return {AccuracyStatus::relative, zeta_d};

  double delta_r_over_rfact = 1.0;
  for (int l = 1; l <= r; ++l) delta_r_over_rfact *= delta / l;
  if (err_budget <= omega * xi * delta_r_over_rfact) return {AccuracyStatus::absolute, zeta_d};

  if (gamma_zeta * zeta_d > theta_d)
    return {AccuracyStatus::insufficient, gamma_zeta * zeta_d};

  return {AccuracyStatus::terminal, zeta_d};
}

}  // namespace datr
