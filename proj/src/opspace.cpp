#include "lftd/opspace.hpp"

#include <string>

namespace lftd {

namespace {

Matrix unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

OperatorSpace::OperatorSpace(Eigen::Index dim_k, Eigen::Index dim_h, std::vector<Matrix> basis, std::string label)
    : dim_k_(dim_k), dim_h_(dim_h), basis_(std::move(basis)), label_(std::move(label)) {
  if (dim_k_ <= 0 || dim_h_ <= 0) throw Error(ErrorKind::InvalidArgument, "space dimensions must be positive");
  if (basis_.empty()) throw Error(ErrorKind::InvalidArgument, "basis must be non-empty");
  coords_.resize(dim_k_ * dim_h_, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    require_shape(basis_[i], "basis element");
    require_finite(basis_[i], "basis entries");
    coords_.col(static_cast<Eigen::Index>(i)) = vec(basis_[i]);
  }
  if (numerical_rank(coords_, 1e-12) != coords_.cols()) {
    throw Error(ErrorKind::InvalidArgument, "basis elements of space '" + label_ + "' are linearly dependent");
  }
  qr_.compute(coords_);
}

OperatorSpace OperatorSpace::full(Eigen::Index dim_k, Eigen::Index dim_h) {
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < dim_k; ++i) {
    for (Eigen::Index j = 0; j < dim_h; ++j) basis.push_back(unit(dim_k, dim_h, i, j));
  }
  return OperatorSpace(dim_k, dim_h, std::move(basis), "full");
}

OperatorSpace OperatorSpace::diagonal(Eigen::Index n) {
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < n; ++i) basis.push_back(unit(n, n, i, i));
  return OperatorSpace(n, n, std::move(basis), "diagonal");
}

OperatorSpace OperatorSpace::upper_triangular(Eigen::Index n) {
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) basis.push_back(unit(n, n, i, j));
  }
  return OperatorSpace(n, n, std::move(basis), "upper-triangular");
}

OperatorSpace OperatorSpace::symmetric(Eigen::Index n) {
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Matrix e = unit(n, n, i, j);
      e(j, i) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  return OperatorSpace(n, n, std::move(basis), "symmetric");
}

OperatorSpace OperatorSpace::trace_zero(Eigen::Index n) {
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) basis.push_back(unit(n, n, i, j));
    }
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    Matrix e = unit(n, n, i, i);
    e(i + 1, i + 1) = -1.0;
    basis.push_back(std::move(e));
  }
  return OperatorSpace(n, n, std::move(basis), "trace-zero");
}

Vector OperatorSpace::coordinates(const Matrix& z) const {
  require_shape(z, "coordinates");
  return qr_.solve(vec(z));
}

Matrix OperatorSpace::combine(const Vector& coords) const {
  if (coords.size() != dimension()) throw Error(ErrorKind::ShapeMismatch, "coordinate vector length");
  Matrix out = Matrix::Zero(dim_k_, dim_h_);
  for (Eigen::Index i = 0; i < coords.size(); ++i) out += coords(i) * basis_[static_cast<std::size_t>(i)];
  return out;
}

Matrix OperatorSpace::project(const Matrix& z) const {
  const Vector p = coords_ * coordinates(z);
  return Eigen::Map<const Matrix>(p.data(), dim_k_, dim_h_);
}

double OperatorSpace::residual(const Matrix& z) const { return (z - project(z)).norm(); }

void OperatorSpace::require_shape(const Matrix& z, std::string_view what) const {
  if (z.rows() != dim_k_ || z.cols() != dim_h_) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " has shape " + std::to_string(z.rows()) + "x" +
                                              std::to_string(z.cols()) + ", space '" + label_ + "' expects " +
                                              std::to_string(dim_k_) + "x" + std::to_string(dim_h_));
  }
}

bool contains(const OperatorSpace& space, const Matrix& z, const Tolerance& tol) {
  space.require_shape(z, "candidate member");
  return space.residual(z) <= tol.eq_tol * (1.0 + z.norm());
}

bool closed_under_quadratic(const OperatorSpace& space, const Matrix& x0, const Tolerance& tol) {
  if (x0.rows() != space.dim_h() || x0.cols() != space.dim_k()) {
    throw Error(ErrorKind::ShapeMismatch, "X0 must be dim_h x dim_k");
  }
  const auto& b = space.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      const Matrix sym = b[i] * x0 * b[j] + b[j] * x0 * b[i];
      if (!contains(space, sym, tol)) return false;
    }
  }
  return true;
}

OperatorSpace make_full(Eigen::Index dim_k, Eigen::Index dim_h) { return OperatorSpace::full(dim_k, dim_h); }

bool make_power_algebra_check(const OperatorSpace& space, const Tolerance& tol) {
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "power algebra check needs a square space");
  if (!contains(space, identity(space.dim_h()), tol)) return false;
  const auto& b = space.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      if (!contains(space, b[i] * b[j] + b[j] * b[i], tol)) return false;
    }
  }
  return true;
}

bool is_adjoint_closed(const OperatorSpace& space, const Tolerance& tol) {
  if (!space.is_square()) return false;
  for (const auto& e : space.basis()) {
    if (!contains(space, e.adjoint(), tol)) return false;
  }
  return true;
}

}  // namespace lftd
