#pragma once

// Accuracy adjudication for an inexact Taylor decrement: decide whether the
// current derivative accuracy threshold supports a relative or absolute error
// guarantee, can be tightened, or has hit the noise floor.

#include <string_view>

namespace datr {

enum class AccuracyStatus { relative, absolute, insufficient, terminal };

std::string_view to_string(AccuracyStatus s);

struct CheckResult {
  AccuracyStatus status;
  double zeta_next;  // gamma_zeta * zeta_d when insufficient, else zeta_d
};

// Branches, evaluated in order:
//   (a) dT > 0 and zeta_d * sum_{l=1..r} delta^l/l! <= omega * dT      -> relative
//   (b) zeta_d * sum_{l=1..r} delta^l/l! <= omega * xi * delta^r/r!    -> absolute
//   (c) gamma_zeta * zeta_d > theta_d                                  -> insufficient
//   (d) otherwise                                                      -> terminal
CheckResult check(double delta, double dT, double zeta_d, double xi, int r, double omega,
                  double gamma_zeta, double theta_d);

}  // namespace datr
