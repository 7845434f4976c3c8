#include "datr/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace datr {

TaylorModel model_from_raw(Vec center, std::optional<double> fbar,
                           std::optional<double> fbar_accuracy,
                           const std::vector<DerivTensor>& raw_tensors, double zeta_d) {
  TaylorModel m;
  m.center = std::move(center);
  m.degree = static_cast<int>(raw_tensors.size());
  m.fbar = fbar;
  m.fbar_accuracy = fbar_accuracy;
  m.tensor_accuracy = zeta_d;
  m.tensors.reserve(raw_tensors.size());
  double factorial = 1.0;
  for (int l = 1; l <= m.degree; ++l) {
    factorial *= l;
    if (raw_tensors[static_cast<std::size_t>(l - 1)].order() != l)
      throw std::invalid_argument("model_from_raw: tensor order mismatch");
    m.tensors.push_back(raw_tensors[static_cast<std::size_t>(l - 1)].scaled(1.0 / factorial));
  }
  return m;
}

double taylor_value(const TaylorModel& model, const Vec& s) {
  if (!model.fbar) throw std::invalid_argument("taylor_value: model has no function value");
  if (s.size() != model.center.size())
    throw std::invalid_argument("taylor_value: dimension mismatch");
  double v = *model.fbar;
  for (const DerivTensor& t : model.tensors) v += t.apply_all(s);
  return v;
}

double decrement(const TaylorModel& model, int j, const Vec& s) {
  if (j < 1 || j > model.degree) throw std::invalid_argument("decrement: order out of range");
  if (s.size() != model.center.size()) throw std::invalid_argument("decrement: dimension mismatch");
  double dec = 0.0;
  for (int l = 1; l <= j; ++l) dec -= model.tensors[static_cast<std::size_t>(l - 1)].apply_all(s);
  return dec;
}

double decrement(const TaylorModel& model, const Vec& s) { return decrement(model, model.degree, s); }

Vec decrement_gradient(const TaylorModel& model, int j, const Vec& s) {
  Vec g = Vec::Zero(model.center.size());
  for (int l = 1; l <= j; ++l)
    g -= static_cast<double>(l) * model.tensors[static_cast<std::size_t>(l - 1)].apply_all_but_one(s);
  return g;
}

double sum_delta_powers(int j, double delta) {
  if (j < 1 || delta < 0) throw std::invalid_argument("sum_delta_powers: need j >= 1, delta >= 0");
  double sum = 0.0, term = 1.0;
  for (int l = 1; l <= j; ++l) {
    term *= delta / l;
    sum += term;
  }
  return sum;
}

namespace {

// One multiplicative power-ascent pass for |S[v]^p| from a given unit start.
double ascend_from(const DerivTensor& t, Vec v, int iters) {
  double best = std::abs(t.apply_all(v));
  for (int it = 0; it < iters; ++it) {
    Vec w = t.apply_all_but_one(v);
    const double wn = w.norm();
    if (wn < 1e-300) break;
    v = w / wn;
    best = std::max(best, std::abs(t.apply_all(v)));
  }
  return best;
}

}  // namespace

double tensor_norm(const DerivTensor& t, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("tensor_norm: n_samples >= 1");
  const int n = t.dim();
  if (t.order() == 1) return t.as_vector().norm();
  if (t.order() == 2) {
    Eigen::SelfAdjointEigenSolver<Mat> es(t.as_matrix());
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    best = std::max(best, ascend_from(t, e, 50));
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < n_samples; ++s) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    const double vn = v.norm();
    if (vn < 1e-300) continue;
    best = std::max(best, ascend_from(t, v / vn, 50));
  }
  return best;
}

}  // namespace datr
