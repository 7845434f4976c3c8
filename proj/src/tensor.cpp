#include "datr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace datr {

namespace {

std::size_t pow_size(int dim, int order) {
  std::size_t s = 1;
  for (int i = 0; i < order; ++i) s *= static_cast<std::size_t>(dim);
  return s;
}

// Contract the last index of `in` (order m over dim n) with v; writes n^{m-1} values.
void contract_last(const std::vector<double>& in, int dim, const Vec& v,
                   std::vector<double>& out) {
  const std::size_t blocks = in.size() / static_cast<std::size_t>(dim);
  out.resize(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    double acc = 0.0;
    const double* row = in.data() + b * static_cast<std::size_t>(dim);
    for (int k = 0; k < dim; ++k) acc += row[k] * v[k];
    out[b] = acc;
  }
}

}  // namespace

DerivTensor::DerivTensor(int order, int dim) : order_(order), dim_(dim) {
  if (order < 1 || dim < 1) throw std::invalid_argument("DerivTensor: order and dim must be >= 1");
  data_.assign(pow_size(dim, order), 0.0);
}

DerivTensor DerivTensor::from_vector(const Vec& g) {
  DerivTensor t(1, static_cast<int>(g.size()));
  for (int i = 0; i < g.size(); ++i) t.data_[static_cast<std::size_t>(i)] = g[i];
  return t;
}

DerivTensor DerivTensor::from_matrix(const Mat& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("DerivTensor: matrix must be square");
  const int n = static_cast<int>(h.rows());
  DerivTensor t(2, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.data_[static_cast<std::size_t>(i) * n + j] = 0.5 * (h(i, j) + h(j, i));
  return t;
}

DerivTensor DerivTensor::from_data(int order, int dim, std::vector<double> data, bool symmetrize) {
  DerivTensor t(order, dim);
  if (data.size() != t.data_.size()) throw std::invalid_argument("DerivTensor: data size mismatch");
  t.data_ = std::move(data);
  return symmetrize ? symmetrized(t) : t;
}

double DerivTensor::at(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int i : idx) flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return data_[flat];
}

double& DerivTensor::at(std::span<const int> idx) {
  std::size_t flat = 0;
  for (int i : idx) flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return data_[flat];
}

double DerivTensor::apply_all(const Vec& v) const {
  std::vector<double> cur = data_, next;
  for (int m = order_; m >= 1; --m) {
    contract_last(cur, dim_, v, next);
    cur.swap(next);
  }
  return cur[0];
}

Vec DerivTensor::apply_all_but_one(const Vec& v) const {
  std::vector<double> cur = data_, next;
  for (int m = order_; m >= 2; --m) {
    contract_last(cur, dim_, v, next);
    cur.swap(next);
  }
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = cur[static_cast<std::size_t>(i)];
  return out;
}

double DerivTensor::apply_multi(std::span<const Vec> vs) const {
  if (static_cast<int>(vs.size()) != order_)
    throw std::invalid_argument("apply_multi: need one vector per index");
  std::vector<double> cur = data_, next;
  for (int m = order_; m >= 1; --m) {
    contract_last(cur, dim_, vs[static_cast<std::size_t>(m - 1)], next);
    cur.swap(next);
  }
  return cur[0];
}

Vec DerivTensor::as_vector() const {
  if (order_ != 1) throw std::logic_error("as_vector: order != 1");
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = data_[static_cast<std::size_t>(i)];
  return g;
}

Mat DerivTensor::as_matrix() const {
  if (order_ != 2) throw std::logic_error("as_matrix: order != 2");
  Mat h(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) h(i, j) = data_[static_cast<std::size_t>(i) * dim_ + j];
  return h;
}

double DerivTensor::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double DerivTensor::max_abs_entry() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

DerivTensor DerivTensor::scaled(double a) const {
  DerivTensor t = *this;
  for (double& x : t.data_) x *= a;
  return t;
}

DerivTensor& DerivTensor::add_scaled(const DerivTensor& other, double a) {
  if (other.order_ != order_ || other.dim_ != dim_)
    throw std::invalid_argument("add_scaled: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
  return *this;
}

DerivTensor symmetrized(const DerivTensor& t) {
  const int p = t.order();
  const int n = t.dim();
  if (p <= 1) return t;
  DerivTensor out(p, n);
  std::vector<int> idx(static_cast<std::size_t>(p), 0);
  std::vector<int> perm(static_cast<std::size_t>(p));
  const std::size_t total = out.data().size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int i = p - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    perm = idx;
    std::sort(perm.begin(), perm.end());
    double acc = 0.0;
    std::size_t count = 0;
    do {
      acc += t.at(perm);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.data()[flat] = acc / static_cast<double>(count);
  }
  return out;
}

DerivTensor random_symmetric_tensor(int order, int dim, std::mt19937_64& rng) {
  DerivTensor t(order, dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& x : t.data()) x = gauss(rng);
  return symmetrized(t);
}

}  // namespace datr
