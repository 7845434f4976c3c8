#include "datr/problems.hpp"

#include "datr/model.hpp"

#include <cmath>
#include <stdexcept>

namespace datr {

namespace {

DerivTensor zero_tensor(int order, int dim) { return DerivTensor(order, dim); }

ProblemSpec make_quadratic(std::string name, Vec diag, Vec x0) {
  const int n = static_cast<int>(diag.size());
  ProblemSpec p;
  p.name = std::move(name);
  p.dimension = n;
  p.max_order = 3;
  p.value = [diag](const Vec& x) { return 0.5 * x.dot(diag.asDiagonal() * x); };
  p.derivative = [diag, n](const Vec& x, int order) {
    if (order == 1) return DerivTensor::from_vector(diag.asDiagonal() * x);
    if (order == 2) return DerivTensor::from_matrix(Mat(diag.asDiagonal()));
    return zero_tensor(order, n);
  };
  p.f_low = 0.0;
  p.lipschitz = {diag.maxCoeff(), 0.0, 0.0};
  p.x0 = std::move(x0);
  return p;
}

ProblemSpec make_rosenbrock() {
  ProblemSpec p;
  p.name = "rosenbrock";
  p.dimension = 2;
  p.max_order = 3;
  p.value = [](const Vec& v) {
    const double x = v[0], y = v[1];
    const double a = y - x * x;
    return 100.0 * a * a + (1.0 - x) * (1.0 - x);
  };
  p.derivative = [](const Vec& v, int order) {
    const double x = v[0], y = v[1];
    if (order == 1) {
      Vec g(2);
      g[0] = -400.0 * x * (y - x * x) - 2.0 * (1.0 - x);
      g[1] = 200.0 * (y - x * x);
      return DerivTensor::from_vector(g);
    }
    if (order == 2) {
      Mat h(2, 2);
      h(0, 0) = -400.0 * y + 1200.0 * x * x + 2.0;
      h(0, 1) = h(1, 0) = -400.0 * x;
      h(1, 1) = 200.0;
      return DerivTensor::from_matrix(h);
    }
    if (order == 3) {
      DerivTensor t(3, 2);
      t.at(std::vector<int>{0, 0, 0}) = 2400.0 * x;
      t.at(std::vector<int>{0, 0, 1}) = -400.0;
      t.at(std::vector<int>{0, 1, 0}) = -400.0;
      t.at(std::vector<int>{1, 0, 0}) = -400.0;
      return t;
    }
    return zero_tensor(order, 2);
  };
  p.f_low = 0.0;
  p.lipschitz = {1.0e4, 7.0e3, 2.4e3};
  p.x0 = Vec(2);
  p.x0 << -1.2, 1.0;
  return p;
}

// Separable quartics f(x) = sum_i (a_i x_i^4 + b_i x_i^2 + c_i).
ProblemSpec make_separable_quartic(std::string name, Vec a, Vec b, double c, double f_low, Vec x0,
                                   std::vector<double> lipschitz) {
  const int n = static_cast<int>(a.size());
  ProblemSpec p;
  p.name = std::move(name);
  p.dimension = n;
  p.max_order = 3;
  p.value = [a, b, c](const Vec& x) {
    double s = c;
    for (int i = 0; i < x.size(); ++i) {
      const double t = x[i] * x[i];
      s += a[i] * t * t + b[i] * t;
    }
    return s;
  };
  p.derivative = [a, b, n](const Vec& x, int order) {
    if (order == 1) {
      Vec g(n);
      for (int i = 0; i < n; ++i) g[i] = 4.0 * a[i] * x[i] * x[i] * x[i] + 2.0 * b[i] * x[i];
      return DerivTensor::from_vector(g);
    }
    if (order == 2) {
      Mat h = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) h(i, i) = 12.0 * a[i] * x[i] * x[i] + 2.0 * b[i];
      return DerivTensor::from_matrix(h);
    }
    if (order == 3) {
      DerivTensor t(3, n);
      for (int i = 0; i < n; ++i) t.at(std::vector<int>{i, i, i}) = 24.0 * a[i] * x[i];
      return t;
    }
    return zero_tensor(order, n);
  };
  p.f_low = f_low;
  p.lipschitz = std::move(lipschitz);
  p.x0 = std::move(x0);
  return p;
}

double fd_gradient_entry(const ProblemSpec& p, const Vec& x, int i, double h) {
  Vec xp = x, xm = x;
  xp[i] += h;
  xm[i] -= h;
  return (p.value(xp) - p.value(xm)) / (2.0 * h);
}

double fd_hessian_entry(const ProblemSpec& p, const Vec& x, int i, int j, double h) {
  Vec xp = x, xm = x;
  xp[j] += h;
  xm[j] -= h;
  return (p.derivative(xp, 1).as_vector()[i] - p.derivative(xm, 1).as_vector()[i]) / (2.0 * h);
}

void check_close(double got, double want, double scale, const std::string& what) {
  const double tol = 1e-4 * std::max(scale, 1.0);
  if (std::abs(got - want) > tol)
    throw std::runtime_error("derivative check failed for " + what);
}

}  // namespace

void validate_derivatives(const ProblemSpec& p) {
  const double h = 1e-5;
  Vec probe2 = p.x0;
  for (int i = 0; i < probe2.size(); ++i) probe2[i] += (i % 2 == 0 ? 0.37 : -0.21);
  for (const Vec& x : {p.x0, probe2}) {
    const Vec g = p.derivative(x, 1).as_vector();
    for (int i = 0; i < p.dimension; ++i)
      check_close(g[i], fd_gradient_entry(p, x, i, h), std::abs(g[i]), p.name + " gradient");
    if (p.max_order >= 2) {
      const Mat hess = p.derivative(x, 2).as_matrix();
      for (int i = 0; i < p.dimension; ++i)
        for (int j = 0; j < p.dimension; ++j)
          check_close(hess(i, j), fd_hessian_entry(p, x, i, j, h), std::abs(hess(i, j)),
                      p.name + " hessian");
    }
    if (p.max_order >= 3) {
      const DerivTensor t3 = p.derivative(x, 3);
      for (int i = 0; i < p.dimension; ++i)
        for (int j = 0; j < p.dimension; ++j)
          for (int k = 0; k < p.dimension; ++k) {
            Vec xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const double fd = (p.derivative(xp, 2).as_matrix()(i, j) -
                               p.derivative(xm, 2).as_matrix()(i, j)) /
                              (2.0 * h);
            check_close(t3.at(std::vector<int>{i, j, k}), fd,
                        std::abs(t3.at(std::vector<int>{i, j, k})), p.name + " order-3");
          }
    }
  }
}

std::vector<ProblemSpec> problem_suite() {
  std::vector<ProblemSpec> suite;

  Vec d2(2);
  d2 << 1.0, 3.0;
  Vec x2(2);
  x2 << 1.0, 1.0;
  suite.push_back(make_quadratic("quadratic2", d2, x2));

  Vec d10(10), x10(10);
  for (int i = 0; i < 10; ++i) {
    d10[i] = i + 1;
    x10[i] = 1.0;
  }
  suite.push_back(make_quadratic("quadratic10", d10, x10));

  suite.push_back(make_rosenbrock());

  // Saddle at the origin: H(0) = diag(-4, 2), minima at (+-1, 0) with f = -1.
  Vec a(2), b(2), xs(2);
  a << 1.0, 1.0;
  b << -2.0, 1.0;
  xs << 0.0, 0.0;
  suite.push_back(
      make_separable_quartic("saddle_quartic", a, b, 0.0, -1.0, xs, {80.0, 65.0, 24.0}));

  // Four symmetric wells at (+-1, +-1), f_low = 0; used for order-3 runs.
  Vec aw(2), bw(2), xw(2);
  aw << 1.0, 1.0;
  bw << -2.0, -2.0;
  xw << 1.8, -0.3;
  suite.push_back(
      make_separable_quartic("quartic_wells", aw, bw, 2.0, 0.0, xw, {80.0, 65.0, 24.0}));

  for (const ProblemSpec& p : suite) validate_derivatives(p);
  return suite;
}

const ProblemSpec& find_problem(const std::vector<ProblemSpec>& suite, const std::string& name) {
  for (const ProblemSpec& p : suite)
    if (p.name == name) return p;
  throw std::invalid_argument("unknown problem: " + name);
}

Oracle make_oracle(const ProblemSpec& problem, NoiseKind kind, std::uint64_t seed,
                   const NoiseParams& params) {
  ExactFunctions fns;
  fns.value = problem.value;
  fns.derivative = problem.derivative;
  return make_noise_model(std::move(fns), kind, seed, params);
}

ProblemConstants problem_constants(const ProblemSpec& problem, const Vec& x0, int q) {
  if (q > problem.max_order)
    throw std::invalid_argument("problem_constants: order exceeds available derivatives");
  ProblemConstants pc;
  pc.f_x0 = problem.value(x0);
  pc.f_low = problem.f_low;
  pc.lipschitz.assign(problem.lipschitz.begin(), problem.lipschitz.begin() + q);
  for (int l = 1; l <= q; ++l)
    pc.grad_norms_x0.push_back(tensor_norm(problem.derivative(x0, l), 64));
  return pc;
}

}  // namespace datr
