#include "lftd/random.hpp"

#include <cmath>
#include <numbers>

namespace lftd {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Complex Sampler::complex_uniform() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

Complex Sampler::unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

Matrix Sampler::matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_uniform();
  }
  return m;
}

Vector Sampler::vector(Eigen::Index n) { return matrix(n, 1).col(0); }

Vector Sampler::unit_vector(Eigen::Index n) {
  Vector v = vector(n);
  while (v.norm() < 1e-6) v = vector(n);
  return v / v.norm();
}

Matrix Sampler::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix Sampler::member_of(const OperatorSpace& space) {
  Vector coords(space.dimension());
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) = complex_uniform();
  return space.combine(coords);
}

Matrix Sampler::with_norm(const Matrix& m, double target) {
  const double n = operator_norm(m);
  if (n == 0.0) return m;
  return m * (target / n);
}

Sampler Sampler::split() { return Sampler(engine_()); }

}  // namespace lftd
