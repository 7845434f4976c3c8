#pragma once

// Truncated Taylor models of degree 1..q and their decrements. Stored tensors
// are Taylor coefficients: the order-l raw derivative tensor divided by l!, so
// that value/decrement apply them without factorial weights.

#include "datr/tensor.hpp"

#include <optional>
#include <vector>

namespace datr {

struct TaylorModel {
  Vec center;
  int degree = 0;  // orders stored: 1..degree
  std::optional<double> fbar;
  std::optional<double> fbar_accuracy;
  std::vector<DerivTensor> tensors;  // tensors[l-1] has order l
  double tensor_accuracy = 0.0;      // zeta_d (raw units) the tensors were produced under
};

// Builds a model from raw derivative tensors, applying the 1/l! coefficient
// scaling once.
TaylorModel model_from_raw(Vec center, std::optional<double> fbar,
                           std::optional<double> fbar_accuracy,
                           const std::vector<DerivTensor>& raw_tensors, double zeta_d);

// fbar(x) + sum_{l=1..degree} T_l[s]^l. Requires fbar.
double taylor_value(const TaylorModel& model, const Vec& s);

// T(x,0) - T(x,s) = -sum_{l=1..j} T_l[s]^l; independent of fbar.
double decrement(const TaylorModel& model, int j, const Vec& s);
double decrement(const TaylorModel& model, const Vec& s);  // j = model.degree

// d/ds of decrement(model, j, s): -sum_{l=1..j} l * T_l[s]^{l-1}.
Vec decrement_gradient(const TaylorModel& model, int j, const Vec& s);

// sum_{l=1..j} delta^l / l!
double sum_delta_powers(int j, double delta);

// Induced Euclidean norm max_{|v|=1} |S[v]^order|; exact for orders 1 and 2,
// a sampled lower bound (multi-start ascent, n_samples random starts) above.
double tensor_norm(const DerivTensor& t, int n_samples);

}  // namespace datr
