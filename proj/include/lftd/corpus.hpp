#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lftd/lftdom.hpp"
#include "lftd/random.hpp"

namespace lftd {

enum class ExampleKind { Zero, Invertibles, Projection, Hyperplane, RankOne, Quadric };

inline constexpr ExampleKind kAllExamples[] = {ExampleKind::Zero,       ExampleKind::Invertibles,
                                               ExampleKind::Projection, ExampleKind::Hyperplane,
                                               ExampleKind::RankOne,    ExampleKind::Quadric};

std::string_view to_string(ExampleKind kind);

struct CorpusDomain {
  ExampleKind kind;
  DomainSpec dom;
  std::optional<QuadricDomain> quadric;
};

/// Random instance of one of the standard examples. Full spaces are dim_k x dim_h;
/// square examples use n = dim_h, the hyperplane uses C^dim_k and the quadric
/// uses n = clamp(dim_k, 2, 4).
CorpusDomain random_example(ExampleKind kind, Eigen::Index dim_k, Eigen::Index dim_h, Sampler& rng,
                            const Tolerance& tol);

/// Random member with cond(CZ + D) <= max_cond and ||X(Z)|| <= max_x. Falls back
/// to points near the base point when rejection sampling keeps failing.
Matrix sample_member(const DomainSpec& dom, Sampler& rng, const Tolerance& tol, double max_cond = 100.0,
                     double max_x = 5.0);

/// Member Z + D with ||X(Z) D|| = radius, D a random direction in the space.
Matrix sample_step(const DomainSpec& dom, const Matrix& z, double radius, Sampler& rng, const Tolerance& tol);

/// Random direction in the space with unit operator norm.
Matrix sample_direction(const DomainSpec& dom, Sampler& rng);

}  // namespace lftd
