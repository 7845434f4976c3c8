#include "datr/subproblem.hpp"

#include <Eigen/Eigenvalues>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace datr {

namespace {

Vec clip_to_ball(const Vec& v, double radius) {
  const double n = v.norm();
  if (n <= radius || n == 0.0) return v;
  return v * (radius / n);
}

// Monotone projected gradient ascent on the decrement within |d| <= radius.
// Returns the best point seen, starting from (and never falling below) d0.
Vec projected_ascent(const TaylorModel& model, int j, Vec d0, double radius, int iters) {
  Vec d = clip_to_ball(d0, radius);
  double best_val = decrement(model, j, d);
  Vec best = d;
  double step = radius;
  for (int it = 0; it < iters; ++it) {
    const Vec grad = decrement_gradient(model, j, d);
    const double gn = grad.norm();
    if (gn < 1e-300) break;
    bool moved = false;
    while (step > 1e-18 * radius) {
      Vec cand = clip_to_ball(d + (step / gn) * grad, radius);
      const double val = decrement(model, j, cand);
      if (val > best_val) {
        d = cand;
        best = cand;
        best_val = val;
        moved = true;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return best;
}

double secular_norm2(const Vec& ghat, const Vec& evals, double lambda) {
  double s = 0.0;
  for (int i = 0; i < ghat.size(); ++i) {
    const double denom = evals[i] + lambda;
    s += (ghat[i] * ghat[i]) / (denom * denom);
  }
  return s;
}

}  // namespace

Vec trs_ball_minimize(const Vec& g, const Mat& b, double radius) {
  const int n = static_cast<int>(g.size());
  if (!(radius > 0)) throw std::invalid_argument("trs_ball_minimize: radius must be > 0");
  Eigen::SelfAdjointEigenSolver<Mat> es(b);
  const Vec evals = es.eigenvalues();
  const Mat q = es.eigenvectors();
  const Vec ghat = q.transpose() * g;
  const double lam_min = evals[0];
  const double scale = std::max({std::abs(evals[0]), std::abs(evals[n - 1]), 1.0});
  const double tol = 1e-12 * scale;

  // Interior solution when B is positive semidefinite and the (pseudo-)Newton
  // point fits in the ball.
  if (lam_min >= -tol) {
    bool singular_conflict = false;
    Vec shat = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (evals[i] > tol) {
        shat[i] = -ghat[i] / evals[i];
      } else if (std::abs(ghat[i]) > tol * std::max(1.0, g.norm())) {
        singular_conflict = true;  // gradient along a null direction: no interior min
      }
    }
    if (!singular_conflict && shat.norm() <= radius) return q * shat;
  }

  // Boundary solution: find lambda >= lam_lo with |s(lambda)| = radius.
  const double lam_lo = std::max(0.0, -lam_min);
  const double gap = std::max(tol, 1e-14 * scale);

  // Hard case: gradient (numerically) orthogonal to the minimal eigenspace and
  // the pseudo solution at lam_lo already fits inside the ball.
  if (lam_min < -tol) {
    double norm2_restricted = 0.0;
    bool grad_on_min_space = false;
    for (int i = 0; i < n; ++i) {
      const double denom = evals[i] + lam_lo;
      if (denom > gap) {
        norm2_restricted += (ghat[i] * ghat[i]) / (denom * denom);
      } else if (std::abs(ghat[i]) > 1e-11 * std::max(1.0, g.norm())) {
        grad_on_min_space = true;
      }
    }
    if (!grad_on_min_space && norm2_restricted < radius * radius) {
      Vec shat = Vec::Zero(n);
      for (int i = 0; i < n; ++i) {
        const double denom = evals[i] + lam_lo;
        if (denom > gap) shat[i] = -ghat[i] / denom;
      }
      const double tau = std::sqrt(std::max(0.0, radius * radius - shat.squaredNorm()));
      shat += tau * Vec::Unit(n, 0).eval();  // first eigenvector carries lam_min
      return q * shat;
    }
  }

  // Safeguarded Newton on 1/|s(lambda)| - 1/radius over (lam_lo, inf).
  double lo = lam_lo + gap;
  double hi = lam_lo + std::max(1.0, g.norm() / radius + std::abs(evals[n - 1]));
  while (secular_norm2(ghat, evals, hi) > radius * radius) hi *= 2.0;
  while (secular_norm2(ghat, evals, lo) < radius * radius && lo > lam_lo + 1e-300) {
    const double next = lam_lo + 0.5 * (lo - lam_lo);
    if (next >= lo) break;
    lo = next;
  }
  double lambda = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double n2 = secular_norm2(ghat, evals, lambda);
    const double norm = std::sqrt(n2);
    if (std::abs(norm - radius) <= 1e-13 * radius) break;
    if (norm > radius) lo = lambda; else hi = lambda;
    // Newton step on phi(l) = 1/norm(l) - 1/radius (monotone increasing).
    double dn2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double denom = evals[i] + lambda;
      dn2 += -2.0 * (ghat[i] * ghat[i]) / (denom * denom * denom);
    }
    const double phi = 1.0 / norm - 1.0 / radius;
    const double dphi = -0.5 * dn2 / (n2 * norm);
    double next = lambda - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
  }
  Vec shat(n);
  for (int i = 0; i < n; ++i) shat[i] = -ghat[i] / (evals[i] + lambda);
  return clip_to_ball(q * shat, radius);
}

namespace {

// Deterministic start set for high-order ascent: +-coordinate extremes, the
// order-2 solution, the steepest-descent direction, then seeded random units.
std::vector<Vec> ascent_starts(const TaylorModel& model, int j, double radius,
                               const SubproblemOptions& opts) {
  const int n = static_cast<int>(model.center.size());
  std::vector<Vec> starts;
  for (int i = 0; i < n; ++i) {
    starts.push_back(radius * Vec::Unit(n, i));
    starts.push_back(-radius * Vec::Unit(n, i));
  }
  if (j >= 2) {
    const Vec g1 = model.tensors[0].as_vector();
    const Mat b = 2.0 * model.tensors[1].as_matrix();
    starts.push_back(trs_ball_minimize(g1, b, radius));
  }
  const Vec g = model.tensors[0].as_vector();
  if (g.norm() > 0) starts.push_back(-radius * g / g.norm());
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(starts.size()) < opts.multistart) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    const double vn = v.norm();
    if (vn < 1e-300) continue;
    starts.push_back(radius * v / vn);
  }
  return starts;
}

Vec best_decrement_point(const TaylorModel& model, int j, double radius,
                         const SubproblemOptions& opts) {
  const int n = static_cast<int>(model.center.size());
  if (j == 1) {
    const Vec g = model.tensors[0].as_vector();
    const double gn = g.norm();
    if (gn == 0.0) return Vec::Zero(n);
    return (-radius / gn) * g;
  }
  if (j == 2) {
    const Vec g = model.tensors[0].as_vector();
    const Mat b = 2.0 * model.tensors[1].as_matrix();
    return trs_ball_minimize(g, b, radius);
  }
  Vec best = Vec::Zero(n);
  double best_val = 0.0;
  for (const Vec& s0 : ascent_starts(model, j, radius, opts)) {
    const Vec cand = projected_ascent(model, j, s0, radius, opts.ascent_iters / 2);
    const double val = decrement(model, j, cand);
    if (val > best_val) {
      best_val = val;
      best = cand;
    }
  }
  return best;
}

}  // namespace

Displacement maximize_decrement(const TaylorModel& model, int j, double delta, double sigma,
                                const SubproblemOptions& opts) {
  if (j < 1 || j > model.degree)
    throw std::invalid_argument("maximize_decrement: order out of range");
  if (!(delta > 0)) throw std::invalid_argument("maximize_decrement: delta must be > 0");
  if (!(sigma > 0 && sigma <= 1))
    throw std::invalid_argument("maximize_decrement: sigma must be in (0,1]");

  Vec d = clip_to_ball(best_decrement_point(model, j, delta, opts), delta);
  double val = decrement(model, j, d);
  if (!(val > 0)) {  // d = 0 fallback keeps the decrement nonnegative
    d = Vec::Zero(model.center.size());
    val = 0.0;
  }
  return Displacement{d, val, delta, j <= 2 ? 1.0 : sigma};
}

Vec compute_step(const TaylorModel& model, int j, const Displacement& d_kj, double Delta,
                 const SubproblemOptions& opts) {
  if (!(Delta > 0)) throw std::invalid_argument("compute_step: Delta must be > 0");
  Vec s;
  if (j <= 2) {
    s = best_decrement_point(model, j, Delta, opts);
  } else {
    s = projected_ascent(model, j, d_kj.d, Delta, opts.ascent_iters);
  }
  if (decrement(model, j, s) < d_kj.decrement_value) s = d_kj.d;
  assert(decrement(model, j, s) >= d_kj.decrement_value);
  return s;
}

Vec global_step(const TaylorModel& model, int j, double Delta, const SubproblemOptions& opts) {
  if (!(Delta > 0)) throw std::invalid_argument("global_step: Delta must be > 0");
  Vec s = clip_to_ball(best_decrement_point(model, j, Delta, opts), Delta);
  if (decrement(model, j, s) <= 0) return Vec::Zero(model.center.size());
  return s;
}

}  // namespace datr
