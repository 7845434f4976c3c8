#include "datr/model.hpp"

#include <doctest.h>

#include <random>

using namespace datr;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

TaylorModel quadratic_model(double fbar, const Vec& g, const Mat& h) {
  TaylorModel m;
  m.center = Vec::Zero(g.size());
  m.degree = 2;
  m.fbar = fbar;
  m.tensors = {DerivTensor::from_vector(g), DerivTensor::from_matrix(h)};
  m.tensor_accuracy = 1e-12;
  return m;
}

TaylorModel random_model(int degree, int dim, std::mt19937_64& rng) {
  TaylorModel m;
  m.center = Vec::Zero(dim);
  m.degree = degree;
  m.fbar = 0.0;
  m.tensor_accuracy = 1e-12;
  for (int l = 1; l <= degree; ++l) m.tensors.push_back(random_symmetric_tensor(l, dim, rng));
  return m;
}

}  // namespace

TEST_CASE("taylor_value linear term") {
  TaylorModel m;
  m.center = Vec::Zero(2);
  m.degree = 1;
  m.fbar = 2.0;
  m.tensors = {DerivTensor::from_vector(vec2(3, 4))};
  CHECK(taylor_value(m, vec2(1, 0)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("taylor_value quadratic term without factorial weights") {
  const TaylorModel m = quadratic_model(0.0, Vec::Zero(2), vec2(-2, 1).asDiagonal());
  CHECK(taylor_value(m, vec2(1, 0)) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("taylor_value at zero displacement returns fbar") {
  std::mt19937_64 rng(11);
  TaylorModel m = random_model(3, 3, rng);
  m.fbar = 0.625;
  CHECK(taylor_value(m, Vec::Zero(3)) == 0.625);
}

TEST_CASE("taylor_value requires fbar and matching dimension") {
  TaylorModel m = quadratic_model(0.0, Vec::Zero(2), Mat::Identity(2, 2));
  m.fbar.reset();
  CHECK_THROWS_AS(taylor_value(m, vec2(1, 0)), std::invalid_argument);
  m.fbar = 0.0;
  CHECK_THROWS_AS(taylor_value(m, Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("decrement of a linear model") {
  TaylorModel m;
  m.center = Vec::Zero(2);
  m.degree = 1;
  m.tensors = {DerivTensor::from_vector(vec2(3, 4))};
  CHECK(decrement(m, vec2(-0.3, -0.4)) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("decrement at zero displacement is zero") {
  std::mt19937_64 rng(12);
  const TaylorModel m = random_model(3, 2, rng);
  CHECK(decrement(m, Vec::Zero(2)) == 0.0);
}

TEST_CASE("decrement through model assembly from raw tensors") {
  // Raw Hessian diag(-2,1) becomes the coefficient tensor diag(-1,0.5), so the
  // decrement at s=(1,0) is 1; a directly stored tensor diag(-2,1) gives 2.
  std::vector<DerivTensor> raw = {DerivTensor::from_vector(Vec::Zero(2)),
                                  DerivTensor::from_matrix(vec2(-2, 1).asDiagonal())};
  const TaylorModel from_raw = model_from_raw(Vec::Zero(2), 0.0, 0.0, raw, 1e-9);
  CHECK(decrement(from_raw, vec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-15));

  const TaylorModel direct = quadratic_model(0.0, Vec::Zero(2), vec2(-2, 1).asDiagonal());
  CHECK(decrement(direct, vec2(1, 0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("decrement is independent of fbar") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 20; ++rep) {
    TaylorModel m = random_model(3, 3, rng);
    Vec s(3);
    for (int i = 0; i < 3; ++i) s[i] = u(rng);
    const double d0 = decrement(m, s);
    m.fbar = u(rng) * 100.0;
    CHECK(decrement(m, s) == d0);
  }
}

TEST_CASE("value drop equals minus decrement") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int rep = 0; rep < 20; ++rep) {
    TaylorModel m = random_model(3, 2, rng);
    m.fbar = u(rng);
    Vec s(2);
    s << u(rng), u(rng);
    const double drop = taylor_value(m, s) - taylor_value(m, Vec::Zero(2));
    CHECK(drop == doctest::Approx(-decrement(m, s)).epsilon(1e-12));
  }
}

TEST_CASE("tensor_norm exact orders") {
  CHECK(tensor_norm(DerivTensor::from_vector(vec2(3, 4)), 1) == doctest::Approx(5.0));
  CHECK(tensor_norm(DerivTensor::from_matrix(vec2(-2, 1).asDiagonal()), 1) ==
        doctest::Approx(2.0));
}

TEST_CASE("tensor_norm dominates random unit samples for order 3") {
  std::mt19937_64 rng(15);
  const DerivTensor t = random_symmetric_tensor(3, 3, rng);
  const double norm = tensor_norm(t, 64);
  std::normal_distribution<double> gauss(0, 1);
  for (int rep = 0; rep < 100; ++rep) {
    Vec v(3);
    for (int i = 0; i < 3; ++i) v[i] = gauss(rng);
    v.normalize();
    CHECK(norm >= std::abs(t.apply_all(v)) - 1e-12);
  }
}

TEST_CASE("sum_delta_powers values") {
  CHECK(sum_delta_powers(2, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(sum_delta_powers(3, 0.5) == doctest::Approx(0.5 + 0.125 + 0.125 / 6.0).epsilon(1e-15));
  CHECK(sum_delta_powers(1, 0.0) == 0.0);
  CHECK_THROWS_AS(sum_delta_powers(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sum_delta_powers(1, -0.1), std::invalid_argument);
}

TEST_CASE("partial exponential sum bounds") {
  for (int j = 1; j <= 8; ++j) {
    for (double delta = 0.01; delta <= 1.0 + 1e-12; delta += 0.01) {
      const double s = sum_delta_powers(j, delta);
      CHECK(s >= std::min(delta, 1.0) - 1e-15);
      CHECK(s < 2.0 * std::max(delta, std::pow(delta, j)));
    }
  }
}

TEST_CASE("symmetric tensor application is argument-order invariant") {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> gauss(0, 1);
  for (int rep = 0; rep < 10; ++rep) {
    const DerivTensor t = random_symmetric_tensor(3, 3, rng);
    std::vector<Vec> vs(3, Vec(3));
    for (Vec& v : vs)
      for (int i = 0; i < 3; ++i) v[i] = gauss(rng);
    const double base = t.apply_multi(vs);
    std::swap(vs[0], vs[2]);
    CHECK(t.apply_multi(vs) == doctest::Approx(base).epsilon(1e-12));
    std::swap(vs[0], vs[1]);
    CHECK(t.apply_multi(vs) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("model_from_raw divides order l by l factorial") {
  std::vector<DerivTensor> raw;
  raw.push_back(DerivTensor::from_vector(vec2(2, 0)));
  raw.push_back(DerivTensor::from_matrix(Mat::Identity(2, 2) * 6.0));
  DerivTensor t3(3, 2);
  t3.at(std::vector<int>{0, 0, 0}) = 12.0;
  raw.push_back(t3);
  const TaylorModel m = model_from_raw(Vec::Zero(2), 1.0, 0.0, raw, 1e-6);
  CHECK(m.tensors[0].as_vector()[0] == 2.0);                 // order 1: / 1!
  CHECK(m.tensors[1].as_matrix()(0, 0) == 3.0);              // order 2: / 2!
  CHECK(m.tensors[2].at(std::vector<int>{0, 0, 0}) == 2.0);  // order 3: / 3!
  CHECK(m.tensor_accuracy == 1e-6);
}
