#include "datr/subproblem.hpp"

#include "datr/harness.hpp"

#include <doctest.h>

#include <random>

using namespace datr;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

TaylorModel model2(const Vec& g, const Mat& h) {
  TaylorModel m;
  m.center = Vec::Zero(g.size());
  m.degree = 2;
  m.tensors = {DerivTensor::from_vector(g), DerivTensor::from_matrix(h)};
  m.tensor_accuracy = 1e-12;
  return m;
}

TaylorModel random_model2(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0, 1);
  Vec g(dim);
  for (int i = 0; i < dim; ++i) g[i] = gauss(rng);
  Mat h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = gauss(rng);
  return model2(g, h);
}

}  // namespace

TEST_CASE("order-1 maximizer is the scaled negative gradient") {
  TaylorModel m = model2(vec2(3, 4), Mat::Zero(2, 2));
  const Displacement d = maximize_decrement(m, 1, 0.5, 1.0);
  CHECK(d.d.isApprox(vec2(-0.3, -0.4), 1e-14));
  CHECK(d.decrement_value == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(d.radius_bound == 0.5);
  CHECK(d.sigma_claimed == 1.0);
}

TEST_CASE("order-2 maximizer on a pure saddle direction") {
  TaylorModel m = model2(Vec::Zero(2), vec2(-2, 1).asDiagonal());
  const Displacement d = maximize_decrement(m, 2, 1.0, 1.0);
  CHECK(d.decrement_value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(d.d[0]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(d.d[1]) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("zero tensors give the zero displacement") {
  TaylorModel m = model2(Vec::Zero(2), Mat::Zero(2, 2));
  const Displacement d = maximize_decrement(m, 2, 1.0, 1.0);
  CHECK(d.d.norm() == 0.0);
  CHECK(d.decrement_value == 0.0);
}

TEST_CASE("order-1 decrement equals gradient norm times radius") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss(0, 1);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    Vec g(3);
    for (int i = 0; i < 3; ++i) g[i] = gauss(rng);
    TaylorModel m;
    m.center = Vec::Zero(3);
    m.degree = 1;
    m.tensors = {DerivTensor::from_vector(g)};
    const double delta = u(rng);
    const Displacement d = maximize_decrement(m, 1, delta, 1.0);
    CHECK(d.decrement_value == doctest::Approx(g.norm() * delta).epsilon(1e-13));
    CHECK(d.d.norm() <= delta * (1 + 1e-12));
  }
}

TEST_CASE("order-2 maximizer matches the grid oracle") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int rep = 0; rep < 10; ++rep) {
    for (int dim : {2, 3}) {
      TaylorModel m = random_model2(dim, rng);
      const double delta = u(rng);
      const Displacement d = maximize_decrement(m, 2, delta, 1.0);
      const double grid = brute_force_phi(m, 2, delta);
      CHECK(d.decrement_value >= 0.999 * grid);
      CHECK(d.d.norm() <= delta * (1 + 1e-12));
    }
  }
}

TEST_CASE("order-2 maximizer handles the interior case") {
  // Strictly convex with a small gradient: the unconstrained minimizer of the
  // model lies inside the ball.
  TaylorModel m = model2(vec2(0.1, 0.0), Mat::Identity(2, 2));
  const Displacement d = maximize_decrement(m, 2, 1.0, 1.0);
  CHECK(d.d.isApprox(vec2(-0.05, 0.0), 1e-9));
  CHECK(d.decrement_value == doctest::Approx(0.1 * 0.05 - 0.05 * 0.05).epsilon(1e-10));
}

TEST_CASE("hard case lands on the boundary along the negative curvature") {
  // Gradient orthogonal to the minimal eigenspace.
  TaylorModel m = model2(vec2(0.0, 0.01), vec2(-1, 1).asDiagonal());
  const Displacement d = maximize_decrement(m, 2, 1.0, 1.0);
  CHECK(d.d.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.decrement_value >= 1.0 - 1e-9);  // at least the curvature decrement
}

TEST_CASE("maximize_decrement is monotone in the radius") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    TaylorModel m = random_model2(2, rng);
    const Displacement small = maximize_decrement(m, 2, 0.4, 1.0);
    const Displacement big = maximize_decrement(m, 2, 1.1, 1.0);
    CHECK(small.decrement_value <= big.decrement_value + 1e-9);
  }
}

TEST_CASE("compute_step extends a linear step to the trust radius") {
  TaylorModel m;
  m.center = Vec::Zero(2);
  m.degree = 1;
  m.tensors = {DerivTensor::from_vector(vec2(3, 4))};
  const Displacement d = maximize_decrement(m, 1, 1.0, 1.0);
  const Vec s = compute_step(m, 1, d, 2.0);
  CHECK(s.isApprox(vec2(-1.2, -1.6), 1e-13));
  CHECK(decrement(m, 1, s) == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(decrement(m, 1, s) >= d.decrement_value);
}

TEST_CASE("compute_step never falls below the displacement decrement") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int rep = 0; rep < 100; ++rep) {
    TaylorModel m = random_model2(3, rng);
    const double delta = u(rng);
    const Displacement d = maximize_decrement(m, 2, delta, 1.0);
    const Vec s = compute_step(m, 2, d, delta + 1.0);
    CHECK(decrement(m, 2, s) >= d.decrement_value - 1e-12);
    CHECK(s.norm() <= delta + 1.0 + 1e-12);
  }
}

TEST_CASE("compute_step keeps the displacement on a zero model") {
  TaylorModel m = model2(Vec::Zero(2), Mat::Zero(2, 2));
  Displacement d;
  d.d = Vec::Zero(2);
  d.decrement_value = 0.0;
  d.radius_bound = 0.5;
  const Vec s = compute_step(m, 2, d, 2.0);
  CHECK(s.norm() == 0.0);
}

TEST_CASE("global_step on linear and saddle models") {
  TaylorModel lin;
  lin.center = Vec::Zero(2);
  lin.degree = 1;
  lin.tensors = {DerivTensor::from_vector(vec2(3, 4))};
  CHECK(global_step(lin, 1, 2.0).isApprox(vec2(-1.2, -1.6), 1e-13));

  TaylorModel sad = model2(Vec::Zero(2), vec2(-2, 1).asDiagonal());
  const Vec s = global_step(sad, 2, 2.0);
  CHECK(std::abs(s[0]) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(s[1]) == doctest::Approx(0.0).epsilon(1e-6));

  TaylorModel zero = model2(Vec::Zero(2), Mat::Zero(2, 2));
  CHECK(global_step(zero, 2, 2.0).norm() == 0.0);
}

TEST_CASE("high-order maximizer reports the declared sigma") {
  std::mt19937_64 rng(25);
  TaylorModel m;
  m.center = Vec::Zero(2);
  m.degree = 3;
  m.tensor_accuracy = 1e-12;
  for (int l = 1; l <= 3; ++l) m.tensors.push_back(random_symmetric_tensor(l, 2, rng));
  const Displacement d = maximize_decrement(m, 3, 0.8, 0.5);
  CHECK(d.sigma_claimed == 0.5);
  CHECK(d.decrement_value >= 0.0);
  CHECK(d.d.norm() <= 0.8 * (1 + 1e-12));
  // The high-order search should at least reach the order-2 exact solution
  // when the cubic term only helps.
  const double grid = brute_force_phi(m, 3, 0.8);
  CHECK(d.decrement_value >= 0.5 * grid - 1e-12);
}

TEST_CASE("argument validation") {
  TaylorModel m = model2(vec2(1, 0), Mat::Identity(2, 2));
  Displacement d;
  d.d = Vec::Zero(2);
  CHECK_THROWS_AS(maximize_decrement(m, 0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(maximize_decrement(m, 3, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(maximize_decrement(m, 1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(maximize_decrement(m, 1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_step(m, 1, d, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(global_step(m, 1, 0.0), std::invalid_argument);
}
