#pragma once

// Dense symmetric derivative tensors over R^n. Order 1 is a vector, order 2 a
// symmetric matrix, orders >= 3 are stored as full dense arrays (desk-scale
// dimensions only).

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace datr {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class DerivTensor {
 public:
  DerivTensor() = default;
  DerivTensor(int order, int dim);  // zero tensor

  static DerivTensor from_vector(const Vec& g);
  static DerivTensor from_matrix(const Mat& h);  // symmetrized
  static DerivTensor from_data(int order, int dim, std::vector<double> data,
                               bool symmetrize = false);

  int order() const { return order_; }
  int dim() const { return dim_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double at(std::span<const int> idx) const;
  double& at(std::span<const int> idx);

  // S[v]^order, full contraction.
  double apply_all(const Vec& v) const;
  // S[v]^{order-1}, one free index.
  Vec apply_all_but_one(const Vec& v) const;
  // S[v_1, ..., v_order] with distinct arguments, contracted in order.
  double apply_multi(std::span<const Vec> vs) const;

  Vec as_vector() const;  // order 1
  Mat as_matrix() const;  // order 2

  double frobenius_norm() const;
  double max_abs_entry() const;

  DerivTensor scaled(double a) const;
  DerivTensor& add_scaled(const DerivTensor& other, double a);

 private:
  int order_ = 0;
  int dim_ = 0;
  std::vector<double> data_;  // row-major, last index fastest, size dim^order
};

// Average over all index permutations.
DerivTensor symmetrized(const DerivTensor& t);

// Dense symmetric tensor with iid N(0,1) entries before symmetrization.
DerivTensor random_symmetric_tensor(int order, int dim, std::mt19937_64& rng);

}  // namespace datr
