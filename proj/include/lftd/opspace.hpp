#pragma once

#include <string>
#include <vector>

#include "lftd/linalg.hpp"

namespace lftd {

/// A complex subspace of the dim_k x dim_h matrices, given by a basis.
///
/// Membership is decided by orthogonal projection in the Frobenius inner
/// product, so the answer does not depend on which basis spans the space.
class OperatorSpace {
 public:
  /// Validates shapes and linear independence of the basis.
  OperatorSpace(Eigen::Index dim_k, Eigen::Index dim_h, std::vector<Matrix> basis, std::string label);

  static OperatorSpace full(Eigen::Index dim_k, Eigen::Index dim_h);
  static OperatorSpace diagonal(Eigen::Index n);
  static OperatorSpace upper_triangular(Eigen::Index n);
  static OperatorSpace symmetric(Eigen::Index n);
  static OperatorSpace trace_zero(Eigen::Index n);

  Eigen::Index dim_k() const { return dim_k_; }
  Eigen::Index dim_h() const { return dim_h_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  bool is_full() const { return dimension() == dim_k_ * dim_h_; }
  bool is_square() const { return dim_k_ == dim_h_; }

  /// Least-squares coordinates of z in the basis.
  Vector coordinates(const Matrix& z) const;
  Matrix combine(const Vector& coords) const;
  /// Orthogonal projection onto the span.
  Matrix project(const Matrix& z) const;
  /// Frobenius norm of z - project(z).
  double residual(const Matrix& z) const;

  void require_shape(const Matrix& z, std::string_view what) const;

 private:
  Eigen::Index dim_k_;
  Eigen::Index dim_h_;
  std::vector<Matrix> basis_;
  std::string label_;
  Matrix coords_;  // vec(B_i) as columns
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

bool contains(const OperatorSpace& space, const Matrix& z, const Tolerance& tol);

/// True iff Z X0 Z stays in the space for all members Z. Checked on basis pairs
/// through polarization: B_i X0 B_j + B_j X0 B_i and B_i X0 B_i.
bool closed_under_quadratic(const OperatorSpace& space, const Matrix& x0, const Tolerance& tol);

OperatorSpace make_full(Eigen::Index dim_k, Eigen::Index dim_h);

/// Contains I and is closed under squaring.
bool make_power_algebra_check(const OperatorSpace& space, const Tolerance& tol);

/// Closed under adjoints (basis-wise check).
bool is_adjoint_closed(const OperatorSpace& space, const Tolerance& tol);

}  // namespace lftd
