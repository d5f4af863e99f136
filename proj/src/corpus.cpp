#include "lftd/corpus.hpp"

#include <algorithm>

namespace lftd {

std::string_view to_string(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::Zero: return "example0";
    case ExampleKind::Invertibles: return "example1";
    case ExampleKind::Projection: return "example2";
    case ExampleKind::Hyperplane: return "example4";
    case ExampleKind::RankOne: return "example5";
    case ExampleKind::Quadric: return "example6";
  }
  return "?";
}

namespace {

Complex nonzero_complex(Sampler& rng, double min_abs) {
  Complex d = rng.complex_uniform();
  while (std::abs(d) < min_abs) d = rng.complex_uniform();
  return d;
}

}  // namespace

CorpusDomain random_example(ExampleKind kind, Eigen::Index dim_k, Eigen::Index dim_h, Sampler& rng,
                            const Tolerance& tol) {
  switch (kind) {
    case ExampleKind::Zero: {
      const auto space = OperatorSpace::full(dim_k, dim_h);
      return {kind, example0(space, rng.member_of(space)), std::nullopt};
    }
    case ExampleKind::Invertibles: {
      const auto space = rng.integer(0, 1) == 0 ? OperatorSpace::full(dim_h, dim_h)
                                                : OperatorSpace::upper_triangular(dim_h);
      return {kind, example1_gi(space, tol), std::nullopt};
    }
    case ExampleKind::Projection: {
      const Matrix q = rng.unitary(dim_h);
      const int rank = rng.integer(0, static_cast<int>(dim_h));
      Matrix p = Matrix::Zero(dim_h, dim_h);
      for (int i = 0; i < rank; ++i) p(i, i) = 1.0;
      const Matrix e = q * p * q.adjoint();
      return {kind, example2_projection(OperatorSpace::full(dim_h, dim_h), e, tol), std::nullopt};
    }
    case ExampleKind::Hyperplane: {
      Vector c = rng.vector(dim_k);
      while (c.norm() < 0.2) c = rng.vector(dim_k);
      return {kind, example4_hyperplane(c, nonzero_complex(rng, 0.3), tol), std::nullopt};
    }
    case ExampleKind::RankOne: {
      const auto space = OperatorSpace::full(dim_k, dim_h);
      return {kind, example5_rank_one(space, rng.unit_vector(dim_h), rng.unit_vector(dim_k),
                                      nonzero_complex(rng, 0.3), tol),
              std::nullopt};
    }
    case ExampleKind::Quadric: {
      auto q = example6_quadric(std::clamp<Eigen::Index>(dim_k, 2, 4), tol);
      DomainSpec dom = q.domain;
      return {kind, std::move(dom), std::move(q)};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown example kind");
}

namespace {

bool acceptable(const DomainSpec& dom, const Matrix& z, const Tolerance& tol, double max_cond, double max_x) {
  if (member(dom, z, tol) != Verdict::Member) return false;
  const Matrix den = dom.denominator(z);
  if (condition_number(den) > max_cond) return false;
  return operator_norm(dom.x_at(z, tol)) <= max_x;
}

}  // namespace

Matrix sample_member(const DomainSpec& dom, Sampler& rng, const Tolerance& tol, double max_cond, double max_x) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Matrix z = rng.member_of(dom.space());
    if (acceptable(dom, z, tol, max_cond, max_x)) return z;
  }
  const Matrix& z0 = dom.base_point();
  for (double radius = 0.5; radius > 1e-6; radius *= 0.5) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      Matrix z = sample_step(dom, z0, radius, rng, tol);
      if (acceptable(dom, z, tol, max_cond, max_x)) return z;
    }
  }
  return z0;
}

Matrix sample_direction(const DomainSpec& dom, Sampler& rng) {
  Matrix d = rng.member_of(dom.space());
  while (operator_norm(d) < 1e-8) d = rng.member_of(dom.space());
  return Sampler::with_norm(d, 1.0);
}

Matrix sample_step(const DomainSpec& dom, const Matrix& z, double radius, Sampler& rng, const Tolerance& tol) {
  const Matrix x = dom.x_at(z, tol);
  Matrix d = sample_direction(dom, rng);
  const double xd = operator_norm(x * d);
  // X D may vanish (e.g. C = 0); then any size of step keeps the bound.
  if (xd > 1e-12) d *= radius / xd;
  else d *= radius;
  return z + d;
}

}  // namespace lftd
