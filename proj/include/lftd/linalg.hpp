#pragma once

#include <complex>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "lftd/error.hpp"

namespace lftd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerance {
  double eq_tol = 1e-9;
  double inv_tol = 1e-10;
  double series_tol = 1e-12;

  /// eq_tol = x, inv_tol = x / 10, series_tol left at its default.
  static Tolerance from_eq(double x);
};

/// Builds a rows x cols matrix from row-major entries, rejecting non-finite input.
Matrix make_matrix(Eigen::Index rows, Eigen::Index cols, std::span<const Complex> entries);
bool all_finite(const Matrix& m);
void require_finite(const Matrix& m, std::string_view what);

Matrix identity(Eigen::Index n);

/// Largest singular value.
double operator_norm(const Matrix& z);
double min_singular_value(const Matrix& z);
/// Ratio of extreme singular values; infinity when singular.
double condition_number(const Matrix& z);

/// Inverse when the smallest singular value exceeds tol.inv_tol. Non-square
/// input throws rather than returning empty.
std::optional<Matrix> try_invert(const Matrix& z, const Tolerance& tol);

/// Principal square root: every eigenvalue of the result lies in the open right
/// half-plane. Computed from the complex Schur form so defective inputs work.
Matrix principal_sqrt(const Matrix& m, const Tolerance& tol);

/// Inverse of the principal square root.
Matrix principal_inv_sqrt(const Matrix& m, const Tolerance& tol);

/// Square root and inverse square root of a Hermitian positive definite matrix.
Matrix hpd_sqrt(const Matrix& m);
Matrix hpd_inv_sqrt(const Matrix& m);

/// Generalized binomial coefficient binom(lambda, n).
Complex binomial(Complex lambda, int n);

/// (I + W)^lambda as the power series sum_n binom(lambda, n) W^n. Requires ||W|| < 1.
Matrix binomial_series(Complex lambda, const Matrix& w, const Tolerance& tol);

/// sum_{n>=1} binom(lambda, n) W^(n-1); the same truncation rule as binomial_series.
Matrix shifted_binomial_series(Complex lambda, const Matrix& w, const Tolerance& tol);

double spectral_radius(const Matrix& z);

/// Smallest eigenvalue of the Hermitian part (M + M*) / 2.
double min_hermitian_eigenvalue(const Matrix& m);
/// True iff the Hermitian part of m has smallest eigenvalue > margin.
bool is_positive_definite(const Matrix& m, double margin);

/// Column-space rank with singular values above tol * max(1, largest).
Eigen::Index numerical_rank(const Matrix& m, double tol);

/// [top; bottom] and [[a, b], [c, d]].
Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

}  // namespace lftd
