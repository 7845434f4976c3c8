#include "datr/check.hpp"

#include "datr/model.hpp"

#include <doctest.h>

#include <random>

using namespace datr;

TEST_CASE("relative branch") {
  const CheckResult r = check(1.0, 1.0, 0.1, 1.0, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::relative);
  CHECK(r.zeta_next == 0.1);
}

TEST_CASE("absolute branch when the decrement is zero") {
  const CheckResult r = check(1.0, 0.0, 0.1, 1.0, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::absolute);
  CHECK(r.zeta_next == 0.1);
}

TEST_CASE("insufficient branch tightens the threshold") {
  const CheckResult r = check(1.0, 0.0, 0.5, 1.0, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::insufficient);
  CHECK(r.zeta_next == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("absolute precedes the floor test") {
  // With xi = 1 the absolute test already holds at zeta = 5e-6, so the floor
  // never comes into play even though gamma_zeta * zeta <= theta_d.
  const CheckResult r = check(1.0, 0.0, 5e-6, 1.0, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::absolute);
}

TEST_CASE("terminal when tightening would cross the floor") {
  // gamma_zeta * zeta = 5e-7 <= theta_d = 1e-6 blocks tightening; xi is small
  // enough that neither accuracy test passes.
  const CheckResult r = check(1.0, 0.0, 5e-6, 1e-5, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::terminal);
  CHECK(r.zeta_next == 5e-6);
}

TEST_CASE("terminal boundary is strict") {
  // gamma_zeta * zeta == theta_d exactly: (gamma_zeta*zeta > theta_d) fails.
  const CheckResult r = check(1.0, 0.0, 1e-5, 1e-9, 1, 0.25, 0.1, 1e-6);
  CHECK(r.status == AccuracyStatus::terminal);
}

TEST_CASE("relative takes precedence over absolute") {
  // Both the relative and absolute conditions hold.
  const CheckResult r = check(1.0, 10.0, 0.1, 10.0, 1, 0.25, 0.1, 0.0);
  CHECK(r.status == AccuracyStatus::relative);
}

TEST_CASE("relative boundary is non-strict") {
  // zeta * delta == omega * dT exactly.
  const CheckResult r = check(1.0, 0.4, 0.1, 1e-9, 1, 0.25, 0.1, 0.0);
  CHECK(r.status == AccuracyStatus::relative);
}

TEST_CASE("zero decrement never yields relative") {
  const CheckResult r = check(1.0, 0.0, 1e-12, 1.0, 3, 0.25, 0.1, 0.0);
  CHECK(r.status == AccuracyStatus::absolute);
}

TEST_CASE("small-threshold premise forces relative or absolute") {
  // 1e4 random admissible inputs satisfying
  // zeta * sum delta^l/l! <= omega * xi * delta^r / r!.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int tested = 0;
  while (tested < 10000) {
    const double delta = 0.01 + 0.99 * u01(rng);
    const int r = 1 + static_cast<int>(u01(rng) * 4);
    const double omega = 0.01 + 0.98 * u01(rng);
    const double xi = std::pow(10.0, -4.0 * u01(rng));
    const double dT = u01(rng) < 0.3 ? 0.0 : std::pow(10.0, -6.0 * u01(rng));
    double fact = 1.0;
    for (int l = 2; l <= r; ++l) fact *= l;
    const double cap = omega * xi * std::pow(delta, r) / fact / sum_delta_powers(r, delta);
    const double zeta = cap * u01(rng);
    if (!(zeta > 0)) continue;
    const CheckResult res = check(delta, dT, zeta, xi, r, omega, 0.1, u01(rng) * 1e-3);
    CHECK((res.status == AccuracyStatus::relative || res.status == AccuracyStatus::absolute));
    ++tested;
  }
}

TEST_CASE("terminal unreachable when the floor is zero") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const double delta = 0.01 + 0.99 * u01(rng);
    const int r = 1 + static_cast<int>(u01(rng) * 4);
    const double zeta = std::pow(10.0, -8.0 * u01(rng));
    const double xi = std::pow(10.0, -8.0 * u01(rng));
    const double dT = u01(rng) < 0.5 ? 0.0 : std::pow(10.0, -8.0 * u01(rng));
    const CheckResult res = check(delta, dT, zeta, xi, r, 0.1, 0.5, 0.0);
    CHECK(res.status != AccuracyStatus::terminal);
  }
}

TEST_CASE("zeta_next shrinks exactly when insufficient") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const double zeta = std::pow(10.0, -6.0 * u01(rng));
    const CheckResult res = check(0.5 + 0.5 * u01(rng), u01(rng), zeta, u01(rng) + 1e-6, 2, 0.2,
                                  0.3, u01(rng) * 1e-4);
    if (res.status == AccuracyStatus::insufficient)
      CHECK(res.zeta_next == doctest::Approx(0.3 * zeta).epsilon(1e-15));
    else
      CHECK(res.zeta_next == zeta);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(check(0.0, 1.0, 0.1, 1.0, 1, 0.25, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.0, 1.0, 1, 0.25, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.1, 0.0, 1, 0.25, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.1, 1.0, 0, 0.25, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.1, 1.0, 1, 1.0, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.1, 1.0, 1, 0.25, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, 1.0, 0.1, 1.0, 1, 0.25, 0.1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(check(1.0, -1.0, 0.1, 1.0, 1, 0.25, 0.1, 0.0), std::invalid_argument);
}
