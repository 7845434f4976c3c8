#pragma once

// Accuracy-requested evaluation of f and its derivative tensors against known
// noise floors. A request below the floor is refused; at or above it, the
// returned value is guaranteed within the requested absolute accuracy.
// Derivative requests and floors are in raw-derivative units.

#include "datr/tensor.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace datr {

struct NoiseProfile {
  double theta_f = 0.0;
  double theta_d = 0.0;
};

struct EvalCounters {
  long f_evals = 0;
  long deriv_evals = 0;          // one per successful call, whatever the order set
  long accuracy_tightenings = 0;  // i_zeta increments, maintained by the solver
};

template <class T>
struct Outcome {
  std::optional<T> value;            // empty: request was below the noise floor
  double guaranteed_accuracy = 0.0;  // equals the request when value is present
  bool refused() const { return !value.has_value(); }
};

enum class NoiseKind { exact, bounded, quantized };

NoiseKind noise_kind_from_string(std::string_view s);
std::string_view to_string(NoiseKind k);

struct NoiseParams {
  // bounded: floors plus a cap on perturbation magnitude, cap = cap_scale * theta.
  double theta_f = 0.0;
  double theta_d = 0.0;
  double cap_scale = 100.0;
  // quantized: round to `bits` significand bits; floors derive from declared
  // magnitude bounds, theta = mag * 2^-bits.
  int bits = 24;
  double mag_f = 1.0;
  double mag_d = 1.0;
};

struct ExactFunctions {
  std::function<double(const Vec&)> value;
  std::function<DerivTensor(const Vec&, int)> derivative;  // raw tensor, order l
};

class Oracle {
 public:
  Oracle(ExactFunctions fns, NoiseKind kind, std::uint64_t seed, NoiseParams params);

  // Inexact f(x) with |fbar - f| <= zeta_f, or refusal if zeta_f < theta_f.
  Outcome<double> eval_f(const Vec& x, double zeta_f);

  // Raw inexact derivative tensors of orders 1..j, each within zeta_d in the
  // induced norm, or refusal if zeta_d < theta_d.
  Outcome<std::vector<DerivTensor>> eval_derivs(const Vec& x, int j, double zeta_d);

  const NoiseProfile& profile() const { return profile_; }
  const EvalCounters& counters() const { return counters_; }
  void count_tightening() { ++counters_.accuracy_tightenings; }

  NoiseKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  // Same configuration, fresh counters. One oracle serves one solver at a time.
  Oracle clone_fresh() const;

  double exact_value(const Vec& x) const { return fns_.value(x); }
  DerivTensor exact_derivative(const Vec& x, int order) const { return fns_.derivative(x, order); }

 private:
  double perturb_scalar(double exact, double zeta, const Vec& x) const;
  DerivTensor perturb_tensor(const DerivTensor& exact, double zeta, const Vec& x, int order) const;

  ExactFunctions fns_;
  NoiseKind kind_;
  std::uint64_t seed_;
  NoiseParams params_;
  NoiseProfile profile_;
  EvalCounters counters_;
};

// Factory; validates the kind/params combination.
Oracle make_noise_model(ExactFunctions fns, NoiseKind kind, std::uint64_t seed,
                        const NoiseParams& params);

// Round to the nearest value with `bits` significand bits.
double quantize_to_bits(double x, int bits);

}  // namespace datr
