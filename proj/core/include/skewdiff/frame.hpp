#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "skewdiff/wiener.hpp"

namespace skewdiff {

/// Hyperplane S = {x : x·ν = 0} in R^d with an orthonormal basis of S.
class HyperplaneFrame {
 public:
  /// Normalizes `nu`; throws std::invalid_argument for d < 2 or a zero vector.
  explicit HyperplaneFrame(Eigen::VectorXd nu);

  /// Frame with ν = e_1.
  static HyperplaneFrame canonical(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(nu_.size()); }
  std::size_t tangent_dim() const { return dim() - 1; }
  const Eigen::VectorXd& nu() const { return nu_; }
  /// d × (d-1), columns orthonormal and orthogonal to ν.
  const Eigen::MatrixXd& basis() const { return basis_; }

  double normal(const Eigen::VectorXd& x) const { return nu_.dot(x); }
  /// Coordinates of π_S x in the basis.
  Eigen::VectorXd tangent(const Eigen::VectorXd& x) const { return basis_.transpose() * x; }
  /// π_S x = x - (x·ν)ν.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const { return x - nu_.dot(x) * nu_; }
  Eigen::VectorXd assemble(double normal, const Eigen::VectorXd& tangent) const {
    return normal * nu_ + basis_ * tangent;
  }

 private:
  Eigen::VectorXd nu_;
  Eigen::MatrixXd basis_;
};

/// Normal component w·ν of a d-dimensional driver.
WienerPath normal_driver(const WienerPath& w, const HyperplaneFrame& frame);

}  // namespace skewdiff
