#include "datr/oracle.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace datr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_call(std::uint64_t seed, const Vec& x, std::uint64_t tag) {
  std::uint64_t h = seed ^ 0x51c2b4f7a3d9e815ULL;
  splitmix64(h);
  for (int i = 0; i < x.size(); ++i) {
    std::uint64_t bits;
    const double xi = x[i];
    std::memcpy(&bits, &xi, sizeof(bits));
    h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    splitmix64(h);
  }
  h ^= tag;
  splitmix64(h);
  return h;
}

double u01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// [-1, 1]
double symmetric_unit(std::uint64_t& state) { return 2.0 * u01(state) - 1.0; }

Vec unit_direction(std::uint64_t& state, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    // Box-Muller; avoids log(0).
    const double a = std::max(u01(state), 1e-300);
    const double b = u01(state);
    v[i] = std::sqrt(-2.0 * std::log(a)) * std::cos(6.283185307179586 * b);
  }
  const double vn = v.norm();
  if (vn < 1e-300) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / vn;
}

// Symmetric rank-one tensor sigma * v^{tensor order}; induced norm |sigma|.
DerivTensor rank_one(int order, const Vec& v, double sigma) {
  DerivTensor t(order, static_cast<int>(v.size()));
  const int n = static_cast<int>(v.size());
  const std::size_t total = t.data().size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double prod = sigma;
    for (int i = 0; i < order; ++i) {
      prod *= v[static_cast<int>(rest % static_cast<std::size_t>(n))];
      rest /= static_cast<std::size_t>(n);
    }
    t.data()[flat] = prod;
  }
  return t;
}

}  // namespace

NoiseKind noise_kind_from_string(std::string_view s) {
  if (s == "exact") return NoiseKind::exact;
  if (s == "bounded") return NoiseKind::bounded;
  if (s == "quantized") return NoiseKind::quantized;
  throw std::invalid_argument("unknown noise model kind: " + std::string(s));
}

std::string_view to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::exact: return "exact";
    case NoiseKind::bounded: return "bounded";
    case NoiseKind::quantized: return "quantized";
  }
  return "?";
}

double quantize_to_bits(double x, int bits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  int exp = 0;
  const double m = std::frexp(x, &exp);  // |m| in [0.5, 1)
  return std::ldexp(std::round(std::ldexp(m, bits)), exp - bits);
}

Oracle::Oracle(ExactFunctions fns, NoiseKind kind, std::uint64_t seed, NoiseParams params)
    : fns_(std::move(fns)), kind_(kind), seed_(seed), params_(params) {
  if (!fns_.value || !fns_.derivative)
    throw std::invalid_argument("Oracle: exact value/derivative callables required");
  switch (kind_) {
    case NoiseKind::exact:
      profile_ = {0.0, 0.0};
      break;
    case NoiseKind::bounded:
      if (params_.theta_f < 0 || params_.theta_d < 0)
        throw std::invalid_argument("Oracle: noise floors must be >= 0");
      profile_ = {params_.theta_f, params_.theta_d};
      break;
    case NoiseKind::quantized:
      if (params_.bits < 1 || params_.bits > 64)
        throw std::invalid_argument("Oracle: quantization bits out of range");
      if (!(params_.mag_f > 0) || !(params_.mag_d > 0))
        throw std::invalid_argument("Oracle: quantized model needs positive magnitude bounds");
      profile_ = {params_.mag_f * std::ldexp(1.0, -params_.bits),
                  params_.mag_d * std::ldexp(1.0, -params_.bits)};
      break;
  }
}

double Oracle::perturb_scalar(double exact, double zeta, const Vec& x) const {
  switch (kind_) {
    case NoiseKind::exact:
      return exact;
    case NoiseKind::bounded: {
      std::uint64_t h = hash_call(seed_, x, 0xf00dULL);
      const double cap = params_.cap_scale * profile_.theta_f;
      return exact + std::min(zeta, cap) * symmetric_unit(h);
    }
    case NoiseKind::quantized:
      return quantize_to_bits(exact, params_.bits);
  }
  return exact;
}

DerivTensor Oracle::perturb_tensor(const DerivTensor& exact, double zeta, const Vec& x,
                                   int order) const {
  switch (kind_) {
    case NoiseKind::exact:
      return exact;
    case NoiseKind::bounded: {
      std::uint64_t h = hash_call(seed_, x, 0xde1dULL + static_cast<std::uint64_t>(order));
      const double cap = params_.cap_scale * profile_.theta_d;
      const double sigma = std::min(zeta, cap) * symmetric_unit(h);
      const Vec dir = unit_direction(h, exact.dim());
      DerivTensor out = exact;
      out.add_scaled(rank_one(order, dir, 1.0), sigma);
      return out;
    }
    case NoiseKind::quantized: {
      DerivTensor out = exact;
      for (double& v : out.data()) v = quantize_to_bits(v, params_.bits);
      return out;
    }
  }
  return exact;
}

Outcome<double> Oracle::eval_f(const Vec& x, double zeta_f) {
  if (!(zeta_f > 0)) throw std::invalid_argument("eval_f: zeta_f must be > 0");
  if (zeta_f < profile_.theta_f) return {std::nullopt, 0.0};
  const double value = perturb_scalar(fns_.value(x), zeta_f, x);
  ++counters_.f_evals;
  return {value, zeta_f};
}

Outcome<std::vector<DerivTensor>> Oracle::eval_derivs(const Vec& x, int j, double zeta_d) {
  if (!(zeta_d > 0)) throw std::invalid_argument("eval_derivs: zeta_d must be > 0");
  if (j < 1) throw std::invalid_argument("eval_derivs: order must be >= 1");
  if (zeta_d < profile_.theta_d) return {std::nullopt, 0.0};
  std::vector<DerivTensor> tensors;
  tensors.reserve(static_cast<std::size_t>(j));
  for (int l = 1; l <= j; ++l)
    tensors.push_back(perturb_tensor(fns_.derivative(x, l), zeta_d, x, l));
  ++counters_.deriv_evals;
  return {std::move(tensors), zeta_d};
}

Oracle Oracle::clone_fresh() const { return Oracle(fns_, kind_, seed_, params_); }

Oracle make_noise_model(ExactFunctions fns, NoiseKind kind, std::uint64_t seed,
                        const NoiseParams& params) {
  return Oracle(std::move(fns), kind, seed, params);
}

}  // namespace datr
