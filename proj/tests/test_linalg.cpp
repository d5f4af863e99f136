#include <doctest.h>

#include <limits>
#include <numbers>

#include "lftd/linalg.hpp"
#include "lftd/random.hpp"
#include "oracles.hpp"

using namespace lftd;
using oracle::mat;

TEST_CASE("matrices reject non-finite entries and bad lengths") {
  const std::vector<Complex> ok = {1.0, 2.0, 3.0, 4.0};
  CHECK(make_matrix(2, 2, ok)(1, 0) == Complex(3.0));
  const std::vector<Complex> bad = {1.0, std::numeric_limits<double>::quiet_NaN(), 3.0, 4.0};
  CHECK_THROWS_AS(make_matrix(2, 2, bad), Error);
  const std::vector<Complex> inf = {1.0, Complex(0.0, std::numeric_limits<double>::infinity())};
  CHECK_THROWS_AS(make_matrix(1, 2, inf), Error);
  CHECK_THROWS_AS(make_matrix(3, 2, ok), Error);
}

TEST_CASE("tolerance defaults and --tol scaling") {
  const Tolerance t;
  CHECK(t.eq_tol == 1e-9);
  CHECK(t.inv_tol == 1e-10);
  CHECK(t.series_tol == 1e-12);
  const Tolerance s = Tolerance::from_eq(1e-6);
  CHECK(s.eq_tol == 1e-6);
  CHECK(s.inv_tol == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(identity(2)) == doctest::Approx(1.0));
  CHECK(operator_norm(mat(2, 2, {3.0, 0.0, 0.0, 1.0})) == doctest::Approx(3.0));
  oracle::Lcg lcg(7);
  for (int i = 0; i < 10; ++i) {
    const Matrix z = lcg.matrix(3, 3);
    CHECK(std::abs(operator_norm(z) - oracle::power_norm(z)) <= 1e-10);
  }
  const Matrix rect = lcg.matrix(2, 4);
  CHECK(std::abs(operator_norm(rect) - oracle::power_norm(rect)) <= 1e-10);
}

TEST_CASE("try_invert") {
  const Tolerance tol;
  auto id = try_invert(identity(2), tol);
  REQUIRE(id);
  CHECK((*id - identity(2)).norm() == 0.0);
  CHECK_FALSE(try_invert(mat(2, 2, {0.0, 1.0, 0.0, 0.0}), tol));
  auto d = try_invert(mat(2, 2, {2.0, 0.0, 0.0, 4.0}), tol);
  REQUIRE(d);
  CHECK(((*d) - mat(2, 2, {0.5, 0.0, 0.0, 0.25})).norm() <= 1e-15);
  CHECK_THROWS_AS(try_invert(Matrix::Zero(2, 3), tol), Error);
  try {
    try_invert(Matrix::Zero(2, 3), tol);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSquare);
  }

  oracle::Lcg lcg(11);
  for (int i = 0; i < 20; ++i) {
    const Matrix z = lcg.matrix(4, 4);
    const auto inv = try_invert(z, tol);
    REQUIRE(inv);
    CHECK((*inv - oracle::gauss_jordan_inverse(z)).norm() <= 1e-10 * condition_number(z));
    CHECK(operator_norm(z * *inv - identity(4)) <= tol.eq_tol * condition_number(z));
  }
}

TEST_CASE("invertibility is decided by the smallest singular value") {
  const Tolerance tol;
  CHECK_FALSE(try_invert(mat(1, 1, {0.5e-10}), tol));
  CHECK(try_invert(mat(1, 1, {2e-10}), tol));
  CHECK_FALSE(try_invert(mat(2, 2, {1e-10, 0.0, 0.0, 1e-10}), tol));
}

TEST_CASE("principal square root") {
  const Tolerance tol;
  CHECK((principal_sqrt(identity(2), tol) - identity(2)).norm() <= 1e-15);
  CHECK((principal_sqrt(mat(2, 2, {4.0, 0.0, 0.0, 9.0}), tol) - mat(2, 2, {2.0, 0.0, 0.0, 3.0})).norm() <= 1e-14);
  const Matrix n = mat(2, 2, {0.0, 0.5, 0.0, 0.0});
  const Matrix q = principal_sqrt(identity(2) + n, tol);
  CHECK((q - (identity(2) + 0.5 * n)).norm() <= 1e-15);
  CHECK((q * q - identity(2) - n).norm() <= 1e-15);

  CHECK_THROWS_AS(principal_sqrt(mat(1, 1, {-4.0}), tol), Error);
  try {
    principal_sqrt(mat(2, 2, {1.0, 0.0, 0.0, -1.0}), tol);
    FAIL("expected spectrum-on-cut");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpectrumOnCut);
  }

  oracle::Lcg lcg(3);
  for (int i = 0; i < 20; ++i) {
    Matrix xr = lcg.matrix(3, 3);
    xr *= lcg.uniform(0.0, 0.9) / oracle::power_norm(xr);
    const Matrix m = identity(3) + xr;
    const Matrix root = principal_sqrt(m, tol);
    CHECK((root - oracle::denman_beavers_sqrt(m)).norm() <= 1e-10);
    Eigen::ComplexEigenSolver<Matrix> es(root);
    CHECK(es.eigenvalues().real().minCoeff() > 0.0);
    CHECK((principal_inv_sqrt(m, tol) * root - identity(3)).norm() <= 1e-12);
  }
}

TEST_CASE("Hermitian positive definite roots") {
  oracle::Lcg lcg(5);
  const Matrix a = lcg.matrix(3, 3);
  const Matrix h = a * a.adjoint() + identity(3);
  const Matrix r = hpd_sqrt(h);
  CHECK((r * r - h).norm() <= 1e-12);
  CHECK((r - r.adjoint()).norm() <= 1e-13);
  CHECK((hpd_inv_sqrt(h) * r - identity(3)).norm() <= 1e-12);
}

TEST_CASE("binomial coefficients and series") {
  const Tolerance tol;
  CHECK(std::abs(binomial(0.5, 2) - Complex(-0.125)) <= 1e-16);
  CHECK(std::abs(binomial(5.0, 2) - Complex(10.0)) <= 1e-14);
  CHECK(std::abs(binomial(-1.0, 3) - Complex(-1.0)) <= 1e-15);

  oracle::Lcg lcg(9);
  Matrix w = lcg.matrix(2, 2);
  w *= 0.5 / oracle::power_norm(w);
  CHECK((binomial_series(0.0, w, tol) - identity(2)).norm() == 0.0);
  CHECK((binomial_series(1.0, w, tol) - identity(2) - w).norm() <= 1e-15);
  const Matrix quarter = mat(1, 1, {0.25});
  CHECK(std::abs(binomial_series(0.5, quarter, tol)(0, 0) - Complex(1.1180339887498949)) <= 1e-12);

  // scalar oracle (1 + w)^lambda on the principal branch
  for (int i = 0; i < 30; ++i) {
    const Complex lambda = std::polar(lcg.uniform(0.0, 2.0), lcg.uniform(0.0, 6.28));
    const Complex x = std::polar(lcg.uniform(0.0, 0.8), lcg.uniform(0.0, 6.28));
    const Complex got = binomial_series(lambda, mat(1, 1, {x}), tol)(0, 0);
    CHECK(std::abs(got - std::pow(1.0 + x, lambda)) <= 1e-11);
  }

  CHECK_THROWS_AS(binomial_series(0.5, mat(1, 1, {1.0}), tol), Error);
  try {
    binomial_series(0.5, mat(1, 1, {1.2}), tol);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Divergence);
  }
}

TEST_CASE("shifted binomial series times W plus I is the binomial series") {
  const Tolerance tol;
  oracle::Lcg lcg(21);
  Matrix w = lcg.matrix(3, 3);
  w *= 0.7 / oracle::power_norm(w);
  for (Complex lambda : {Complex(0.3), Complex(-1.7, 0.4), Complex(2.0)}) {
    const Matrix s = shifted_binomial_series(lambda, w, tol);
    CHECK((identity(3) + w * s - binomial_series(lambda, w, tol)).norm() <= 1e-11);
  }
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(identity(2)) == doctest::Approx(1.0));
  CHECK(spectral_radius(mat(2, 2, {0.0, 1.0, 0.0, 0.0})) == doctest::Approx(0.0));
  CHECK(spectral_radius(mat(2, 2, {2.0, 0.0, 0.0, -3.0})) == doctest::Approx(3.0));
}

TEST_CASE("numerical rank and stacking") {
  CHECK(numerical_rank(mat(2, 2, {1.0, 2.0, 2.0, 4.0}), 1e-12) == 1);
  CHECK(numerical_rank(identity(3), 1e-12) == 3);
  const Matrix s = vstack(mat(1, 2, {1.0, 2.0}), mat(1, 2, {3.0, 4.0}));
  CHECK(s.rows() == 2);
  CHECK(s(1, 1) == Complex(4.0));
  const Matrix b = block2x2(mat(1, 1, {1.0}), mat(1, 1, {2.0}), mat(1, 1, {3.0}), mat(1, 1, {4.0}));
  CHECK(b == mat(2, 2, {1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE("properties on random inputs") {
  const Tolerance tol;
  Sampler rng(2024);
  for (int t = 0; t < 100; ++t) {
    const Matrix z = rng.matrix(3, 3);
    const auto inv = try_invert(z, tol);
    REQUIRE(inv);
    CHECK(operator_norm(*inv * z - identity(3)) <= 1e-8 * condition_number(z));

    const Matrix a = rng.matrix(2, 3), b = rng.matrix(3, 4);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-12);

    const Complex lambda = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    const Matrix w = Sampler::with_norm(rng.matrix(3, 3), rng.uniform(0.0, 0.8));
    CHECK(operator_norm(binomial_series(lambda, w, tol) * binomial_series(-lambda, w, tol) - identity(3)) <= 1e-9);
  }
}
