#pragma once

// Independent reference computations used as test oracles. None of these call
// into the library's SVD, Schur or series kernels.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<Complex> entries) {
  Matrix m(rows, cols);
  auto it = entries.begin();
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

/// Largest singular value by power iteration on Z* Z.
inline double power_norm(const Matrix& z, int iters = 2000) {
  const Matrix g = z.adjoint() * z;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(g.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += Complex(0.1 * static_cast<double>(i), 0.05);
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXcd w = g * v;
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
    lambda = n;
  }
  return std::sqrt(lambda);
}

/// Determinant by cofactor expansion along the first row.
inline Complex cofactor_det(const Matrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Complex det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    det += (j % 2 == 0 ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
  }
  return det;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline Matrix gauss_jordan_inverse(Matrix a) {
  const Eigen::Index n = a.rows();
  Matrix inv = Matrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    a.row(col).swap(a.row(piv));
    inv.row(col).swap(inv.row(piv));
    const Complex p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

/// Principal square root by the Denman-Beavers iteration.
inline Matrix denman_beavers_sqrt(const Matrix& m, int iters = 100) {
  Matrix y = m;
  Matrix z = Matrix::Identity(m.rows(), m.cols());
  for (int k = 0; k < iters; ++k) {
    const Matrix yi = gauss_jordan_inverse(y);
    const Matrix zi = gauss_jordan_inverse(z);
    y = 0.5 * (y + zi);
    z = 0.5 * (z + yi);
  }
  return y;
}

/// Scalar Mobius (z + b) / (1 + conj(b) z).
inline Complex scalar_mobius(Complex b, Complex z) { return (z + b) / (1.0 + std::conj(b) * z); }

/// Fixed-seed LCG so oracle-side sampling does not share the library's generator.
class Lcg {
 public:
  explicit Lcg(unsigned long long seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state_ >> 11) * (1.0 / 9007199254740992.0);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  Matrix matrix(Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex();
    return m;
  }

 private:
  unsigned long long state_;
};

}  // namespace oracle
