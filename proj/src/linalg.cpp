#include "lftd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace lftd {

namespace {

constexpr int kMaxSeriesTerms = 10000;

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, std::string(what) + " requires a square matrix, got " +
                                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Eigen::VectorXd singular_values(const Matrix& z) {
  if (z.size() == 0) return Eigen::VectorXd::Zero(1);
  return Eigen::JacobiSVD<Matrix>(z).singularValues();
}

}  // namespace

Tolerance Tolerance::from_eq(double x) {
  Tolerance t;
  t.eq_tol = x;
  t.inv_tol = x / 10.0;
  return t;
}

Matrix make_matrix(Eigen::Index rows, Eigen::Index cols, std::span<const Complex> entries) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
  }
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(entries.size()));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
  }
  require_finite(m, "matrix entries");
  return m;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!all_finite(m)) throw Error(ErrorKind::NonFinite, std::string(what) + " contain NaN or infinity");
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

double operator_norm(const Matrix& z) { return singular_values(z)(0); }

double min_singular_value(const Matrix& z) {
  const auto s = singular_values(z);
  return s(s.size() - 1);
}

double condition_number(const Matrix& z) {
  const auto s = singular_values(z);
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

std::optional<Matrix> try_invert(const Matrix& z, const Tolerance& tol) {
  require_square(z, "try_invert");
  if (min_singular_value(z) <= tol.inv_tol) return std::nullopt;
  return Matrix(z.partialPivLu().inverse());
}

Matrix principal_sqrt(const Matrix& m, const Tolerance& tol) {
  require_square(m, "principal_sqrt");
  const Eigen::Index n = m.rows();
  Eigen::ComplexSchur<Matrix> schur(m);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();

  const double cut_band = tol.inv_tol * std::max(1.0, operator_norm(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex ev = t(i, i);
    if (ev.real() <= cut_band && std::abs(ev.imag()) <= cut_band) {
      throw Error(ErrorKind::SpectrumOnCut, "eigenvalue (" + std::to_string(ev.real()) + ", " +
                                                std::to_string(ev.imag()) +
                                                ") lies on the closed negative real axis");
    }
  }

  // Upper triangular R with R^2 = T, column by column.
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return u * r * u.adjoint();
}

Matrix principal_inv_sqrt(const Matrix& m, const Tolerance& tol) {
  const Matrix q = principal_sqrt(m, tol);
  auto inv = try_invert(q, tol);
  if (!inv) throw Error(ErrorKind::SpectrumOnCut, "square root is numerically singular");
  return *inv;
}

Matrix hpd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hpd_inv_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "matrix is not positive definite");
  }
  const Eigen::VectorXd ev = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Complex binomial(Complex lambda, int n) {
  Complex c = 1.0;
  for (int k = 1; k <= n; ++k) c *= (lambda - static_cast<double>(k - 1)) / static_cast<double>(k);
  return c;
}

namespace {

// Sums coef_n * W^(n - shift) for n >= first, stopping once the tail bound
// |binom(lambda, n+1)| ||W||^(n+1-shift) / (1 - ||W||) drops below series_tol.
Matrix binomial_sum(Complex lambda, const Matrix& w, const Tolerance& tol, int first) {
  require_square(w, "binomial_series");
  const double wn = operator_norm(w);
  if (!(wn < 1.0)) {
    throw Error(ErrorKind::Divergence, "binomial series needs ||W|| < 1, got " + std::to_string(wn));
  }
  const Eigen::Index dim = w.rows();
  Complex coef = binomial(lambda, first);
  Matrix power = identity(dim);
  Matrix sum = coef * power;
  double power_norm = 1.0;
  for (int n = first + 1; n <= kMaxSeriesTerms; ++n) {
    const Complex next = coef * (lambda - static_cast<double>(n - 1)) / static_cast<double>(n);
    if (std::abs(next) * power_norm * wn / (1.0 - wn) < tol.series_tol) return sum;
    coef = next;
    power = power * w;
    power_norm *= wn;
    sum += coef * power;
  }
  throw Error(ErrorKind::Divergence,
              "binomial series did not reach series_tol within " + std::to_string(kMaxSeriesTerms) + " terms");
}

}  // namespace

Matrix binomial_series(Complex lambda, const Matrix& w, const Tolerance& tol) {
  return binomial_sum(lambda, w, tol, 0);
}

Matrix shifted_binomial_series(Complex lambda, const Matrix& w, const Tolerance& tol) {
  return binomial_sum(lambda, w, tol, 1);
}

double spectral_radius(const Matrix& z) {
  require_square(z, "spectral_radius");
  Eigen::ComplexEigenSolver<Matrix> es(z, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const Matrix& m) {
  require_square(m, "min_hermitian_eigenvalue");
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_positive_definite(const Matrix& m, double margin) { return min_hermitian_eigenvalue(m) > margin; }

Eigen::Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  const auto s = singular_values(m);
  const double cut = tol * std::max(1.0, s(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "inconsistent block shapes");
  }
  Matrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

}  // namespace lftd
