#pragma once

// Ball-constrained maximization of Taylor decrements and trust-region step
// computation. Orders 1 and 2 are solved exactly (closed form / secular
// equation on the eigendecomposition); orders >= 3 use multi-start projected
// gradient ascent and inherit the caller's declared sigma factor.

#include "datr/model.hpp"

#include <cstdint>

namespace datr {

struct Displacement {
  Vec d;
  double decrement_value = 0.0;  // decrement(model, j, d), exactly as computed
  double radius_bound = 0.0;     // the delta with |d| <= delta
  double sigma_claimed = 1.0;
};

struct SubproblemOptions {
  int multistart = 32;
  int ascent_iters = 200;
  std::uint64_t seed = 0x5eedULL;
};

// Exact global minimizer of g's + s'Bs/2 over |s| <= radius (B symmetric).
Vec trs_ball_minimize(const Vec& g, const Mat& b, double radius);

// d with |d| <= delta and decrement(model, j, d) >= sigma * max decrement
// (exact for j <= 2, declared for j >= 3); never negative (d = 0 fallback).
Displacement maximize_decrement(const TaylorModel& model, int j, double delta, double sigma,
                                const SubproblemOptions& opts = {});

// Step s with |s| <= Delta and decrement(model, j, s) >= d_kj.decrement_value,
// improving from d_kj inside the larger ball.
Vec compute_step(const TaylorModel& model, int j, const Displacement& d_kj, double Delta,
                 const SubproblemOptions& opts = {});

// Approximate global maximizer of the decrement over |s| <= Delta (exact for
// j <= 2, multi-start above).
Vec global_step(const TaylorModel& model, int j, double Delta, const SubproblemOptions& opts = {});

}  // namespace datr
