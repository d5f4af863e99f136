#include <doctest.h>

#include "lftd/opspace.hpp"
#include "lftd/random.hpp"
#include "oracles.hpp"

using namespace lftd;
using oracle::mat;

TEST_CASE("contains") {
  const Tolerance tol;
  oracle::Lcg lcg(1);
  CHECK(contains(OperatorSpace::full(2, 2), lcg.matrix(2, 2), tol));
  CHECK_FALSE(contains(OperatorSpace::diagonal(2), mat(2, 2, {0.0, 1.0, 0.0, 0.0}), tol));
  CHECK(contains(OperatorSpace::symmetric(2), mat(2, 2, {1.0, 2.0, 2.0, 3.0}), tol));
  CHECK_FALSE(contains(OperatorSpace::symmetric(2), mat(2, 2, {1.0, 2.0, 0.0, 3.0}), tol));
  CHECK_THROWS_AS(contains(OperatorSpace::full(2, 2), Matrix::Zero(3, 2), tol), Error);
}

TEST_CASE("membership does not depend on the basis") {
  const Tolerance tol;
  const Matrix a = mat(2, 2, {1.0, 1.0, 0.0, 0.0});
  const Matrix b = mat(2, 2, {0.0, 1.0, 0.0, 1.0});
  const OperatorSpace s1(2, 2, {a, b}, "s1");
  const OperatorSpace s2(2, 2, {a + b, a - 2.0 * b}, "s2");
  oracle::Lcg lcg(4);
  for (int i = 0; i < 10; ++i) {
    const Matrix z = lcg.complex() * a + lcg.complex() * b;
    CHECK(contains(s1, z, tol));
    CHECK(contains(s2, z, tol));
    const Matrix off = z + mat(2, 2, {0.0, 0.0, 1.0, 0.0});
    CHECK_FALSE(contains(s1, off, tol));
    CHECK_FALSE(contains(s2, off, tol));
  }
}

TEST_CASE("basis validation") {
  const Matrix a = mat(2, 2, {1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(OperatorSpace(2, 2, {a, 2.0 * a}, "dependent"), Error);
  CHECK_THROWS_AS(OperatorSpace(2, 2, {Matrix::Zero(2, 3)}, "shape"), Error);
  CHECK_THROWS_AS(OperatorSpace(2, 2, {}, "empty"), Error);
  const OperatorSpace s(2, 2, {a}, "line");
  CHECK(s.dimension() == 1);
  CHECK(s.label() == "line");
}

TEST_CASE("factory spaces") {
  CHECK(OperatorSpace::full(2, 3).dimension() == 6);
  CHECK(OperatorSpace::full(2, 3).is_full());
  CHECK(OperatorSpace::diagonal(3).dimension() == 3);
  CHECK(OperatorSpace::upper_triangular(3).dimension() == 6);
  CHECK(OperatorSpace::symmetric(3).dimension() == 6);
  CHECK(OperatorSpace::trace_zero(3).dimension() == 8);
  CHECK(make_full(3, 1).dimension() == 3);
}

TEST_CASE("quadratic closure") {
  const Tolerance tol;
  oracle::Lcg lcg(2);
  CHECK(closed_under_quadratic(OperatorSpace::full(2, 3), lcg.matrix(3, 2), tol));
  const OperatorSpace corner(2, 2, {mat(2, 2, {1.0, 0.0, 0.0, 0.0})}, "corner");
  CHECK(closed_under_quadratic(corner, identity(2), tol));
  const OperatorSpace off(2, 2, {mat(2, 2, {0.0, 1.0, 0.0, 0.0}), mat(2, 2, {0.0, 0.0, 1.0, 0.0})}, "off-diagonal");
  CHECK_FALSE(closed_under_quadratic(off, identity(2), tol));
  // brute force oracle: a member whose square leaves the space
  const Matrix z = off.basis()[0] + off.basis()[1];
  CHECK(off.residual(z * z) > 0.5);
  CHECK_THROWS_AS(closed_under_quadratic(off, Matrix::Zero(3, 2), tol), Error);
}

TEST_CASE("power algebra check") {
  const Tolerance tol;
  for (Eigen::Index n = 1; n <= 4; ++n) CHECK(make_power_algebra_check(OperatorSpace::full(n, n), tol));
  CHECK(make_power_algebra_check(OperatorSpace::upper_triangular(2), tol));
  CHECK(make_power_algebra_check(OperatorSpace::diagonal(3), tol));
  CHECK_FALSE(make_power_algebra_check(OperatorSpace::trace_zero(2), tol));
  CHECK_THROWS_AS(make_power_algebra_check(OperatorSpace::full(2, 3), tol), Error);
}

TEST_CASE("adjoint closure") {
  const Tolerance tol;
  CHECK(is_adjoint_closed(OperatorSpace::full(2, 2), tol));
  CHECK(is_adjoint_closed(OperatorSpace::diagonal(2), tol));
  CHECK_FALSE(is_adjoint_closed(OperatorSpace::upper_triangular(2), tol));
}

TEST_CASE("coordinates and projection") {
  const OperatorSpace s = OperatorSpace::upper_triangular(2);
  const Matrix z = mat(2, 2, {1.0, Complex(2.0, 1.0), 0.0, 3.0});
  CHECK((s.combine(s.coordinates(z)) - z).norm() <= 1e-14);
  const Matrix p = s.project(mat(2, 2, {1.0, 2.0, 5.0, 3.0}));
  CHECK((p - mat(2, 2, {1.0, 2.0, 0.0, 3.0})).norm() <= 1e-14);
  CHECK(s.residual(mat(2, 2, {0.0, 0.0, 5.0, 0.0})) == doctest::Approx(5.0));
}

TEST_CASE("invariants on random members") {
  const Tolerance tol;
  Sampler rng(77);
  const std::vector<OperatorSpace> spaces = {OperatorSpace::full(2, 3), OperatorSpace::diagonal(3),
                                             OperatorSpace::upper_triangular(3), OperatorSpace::symmetric(2),
                                             OperatorSpace::trace_zero(3)};
  for (const auto& s : spaces) {
    for (const auto& b : s.basis()) CHECK(contains(s, b, tol));
    const Matrix x0 = s.is_full() ? rng.matrix(s.dim_h(), s.dim_k()) : identity(s.dim_h());
    const bool closed = closed_under_quadratic(s, x0, tol);
    for (int i = 0; i < 50; ++i) {
      const Matrix z = rng.member_of(s);
      if (closed) CHECK(contains(s, z * x0 * z, tol));
    }
  }
}
