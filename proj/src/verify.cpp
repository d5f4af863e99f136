#include "lftd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lftd/autgroup.hpp"
#include "lftd/circular.hpp"
#include "lftd/corpus.hpp"
#include "lftd/lftdom.hpp"
#include "lftd/random.hpp"

namespace lftd {

void validate(const RunConfig& config) {
  if (config.trials < 1 || config.trials > kMaxTrials)
    throw Error(ErrorKind::InvalidArgument, "trials must lie in [1, 1000000]");
  if (config.dim_h < 1 || config.dim_h > kMaxDim || config.dim_k < 1 || config.dim_k > kMaxDim)
    throw Error(ErrorKind::InvalidArgument, "dimensions must lie in [1, 8]");
  if (!(config.tol.eq_tol > 0.0) || !std::isfinite(config.tol.eq_tol) || !(config.tol.inv_tol > 0.0) ||
      !(config.tol.series_tol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive and finite");
}

bool Report::passed() const {
  return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteRecord& s) { return s.passed; });
}

const SuiteRecord* Report::find(const std::string& name) const {
  for (const auto& s : suites)
    if (s.name == name) return &s;
  return nullptr;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Accumulates one suite: every trial contributes a residual, errors count as
/// infinite residuals and the first message is kept.
class Check {
 public:
  Check(std::string name, std::string anchor, double threshold)
      : name_(std::move(name)), anchor_(std::move(anchor)), threshold_(threshold) {}

  void run(const std::function<double()>& f) {
    const auto start = std::chrono::steady_clock::now();
    double r = kInf;
    try {
      r = f();
    } catch (const std::exception& e) {
      if (note_.empty()) note_ = e.what();
    }
    elapsed_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (std::isnan(r)) r = kInf;
    ++trials_;
    max_ = std::max(max_, r);
  }

  void note(std::string text) { extra_ = std::move(text); }
  double max() const { return max_; }

  SuiteRecord finish() const {
    SuiteRecord s;
    s.name = name_;
    s.anchor = anchor_;
    s.trials = trials_;
    s.max_residual = max_;
    s.threshold = threshold_;
    s.passed = trials_ > 0 && max_ <= threshold_;
    s.elapsed_ms = elapsed_;
    s.note = note_.empty() ? extra_ : note_;
    return s;
  }

 private:
  std::string name_;
  std::string anchor_;
  double threshold_;
  int trials_ = 0;
  double max_ = 0.0;
  double elapsed_ = 0.0;
  std::string note_;
  std::string extra_;
};

double norm(const Matrix& m) { return operator_norm(m); }
double rel(const Matrix& diff, const Matrix& ref) { return norm(diff) / (1.0 + norm(ref)); }

using Records = std::vector<SuiteRecord>;

void emit(Records& out, std::initializer_list<const Check*> checks) {
  for (const Check* c : checks) out.push_back(c->finish());
}

Eigen::Index square_dim(const RunConfig& cfg) { return cfg.dim_h; }

// ---------------------------------------------------------------- linalg

void group_linalg(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check inverse("linalg.inverse", "||Z^-1 Z - I|| <= 1e-8 cond(Z)", 1e-8);
  Check sqrt("linalg.principal_sqrt", "Q^2 = I + XR", tol.eq_tol);
  Check binom("linalg.binomial_inverse", "b_l(W) b_-l(W) = I", 1e-9);
  Check submult("linalg.submultiplicative", "||ZW|| <= ||Z|| ||W||", 1e-12);

  for (int t = 0; t < cfg.trials; ++t) {
    const Eigen::Index n = 1 + rng.integer(0, static_cast<int>(std::max(cfg.dim_h, cfg.dim_k)) - 1);
    const Matrix z = rng.matrix(n, n);
    inverse.run([&] {
      const auto inv = try_invert(z, tol);
      if (!inv) return 0.0;
      return norm(*inv * z - identity(n)) / condition_number(z);
    });

    const Matrix xr = Sampler::with_norm(rng.matrix(n, n), rng.uniform(0.0, 0.9));
    const Matrix m = identity(n) + xr;
    sqrt.run([&] {
      const Matrix q = principal_sqrt(m, tol);
      return norm(q * q - m) / norm(m);
    });

    const Complex lambda = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    const Matrix w = Sampler::with_norm(rng.matrix(n, n), rng.uniform(0.0, 0.8));
    binom.run([&] {
      return norm(binomial_series(lambda, w, tol) * binomial_series(-lambda, w, tol) - identity(n));
    });

    const Eigen::Index p = 1 + rng.integer(0, 3);
    const Matrix a = rng.matrix(n, p) * rng.uniform(0.1, 3.0);
    const Matrix b = rng.matrix(p, 1 + rng.integer(0, 3)) * rng.uniform(0.1, 3.0);
    submult.run([&] { return std::max(0.0, norm(a * b) - norm(a) * norm(b)); });
  }
  emit(out, {&inverse, &sqrt, &binom, &submult});
}

// ---------------------------------------------------------------- opspace

struct ClosureCase {
  OperatorSpace space;
  Matrix x0;
};

void group_opspace(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  const Eigen::Index n = std::max<Eigen::Index>(2, square_dim(cfg));
  Check basis("opspace.basis_members", "B in span(B_1, ..., B_m)", tol.eq_tol);
  Check closure("opspace.quadratic_closure", "Z X0 Z in space for all Z", tol.eq_tol);
  Check power("opspace.power_algebra", "I in space, Z^2 in space", 0.0);

  const auto quadric = example6_quadric(std::clamp<Eigen::Index>(cfg.dim_k, 2, 4), tol);
  std::vector<OperatorSpace> spaces = {OperatorSpace::full(cfg.dim_k, cfg.dim_h), OperatorSpace::diagonal(n),
                                       OperatorSpace::upper_triangular(n), OperatorSpace::symmetric(n),
                                       OperatorSpace::trace_zero(n), quadric.domain.space()};
  for (const auto& s : spaces)
    for (const auto& b : s.basis()) basis.run([&] { return s.residual(b) / (1.0 + b.norm()); });

  auto upper = [&](const Matrix& m) { return Matrix(m.triangularView<Eigen::Upper>()); };
  auto diag = [&](const Matrix& m) { return Matrix(m.diagonal().asDiagonal()); };
  auto sym = [&](const Matrix& m) { return Matrix(m + m.transpose()); };
  const Matrix off_x0 = rng.matrix(n, n);
  std::vector<ClosureCase> cases = {
      {OperatorSpace::full(cfg.dim_k, cfg.dim_h), rng.matrix(cfg.dim_h, cfg.dim_k)},
      {OperatorSpace::diagonal(n), diag(rng.matrix(n, n))},
      {OperatorSpace::upper_triangular(n), upper(rng.matrix(n, n))},
      {OperatorSpace::symmetric(n), sym(rng.matrix(n, n))},
      {quadric.domain.space(), quadric.domain.x0()},
      {OperatorSpace::upper_triangular(n), off_x0},
      {OperatorSpace::symmetric(n), off_x0},
      {OperatorSpace::trace_zero(n), identity(n)},
  };
  const int members = std::max(1, cfg.trials / 2);
  for (const auto& c : cases) {
    const bool predicate = closed_under_quadratic(c.space, c.x0, tol);
    double worst = 0.0;
    std::vector<Matrix> zs;
    for (int i = 0; i < members; ++i) zs.push_back(rng.member_of(c.space));
    closure.run([&] {
      for (const auto& z : zs) {
        const Matrix q = z * c.x0 * z;
        worst = std::max(worst, c.space.residual(q) / (1.0 + q.norm()));
      }
      if (predicate) return worst;
      // a negative verdict must be witnessed by some sample
      return worst > 1e3 * tol.eq_tol ? 0.0 : kInf;
    });
  }

  for (Eigen::Index k = 1; k <= 4; ++k)
    power.run([&] { return make_power_algebra_check(OperatorSpace::full(k, k), tol) ? 0.0 : 1.0; });
  emit(out, {&basis, &closure, &power});
}

// ---------------------------------------------------------------- lftdom

void group_lftdom(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check base("lftdom.base_point", "(C Z0 + D)^-1 exists", 0.0);
  Check det("lftdom.det_membership", "det(I + D^-1 C Z) = 0 iff C Z + D singular", 0.0);
  Check rank_one("lftdom.rank_one_test", "(Zx, y) != -d", 0.0);
  Check conn("lftdom.connectivity", "C A compact; X0 Z algebraic", 0.0);

  for (int t = 0; t < cfg.trials; ++t) {
    const ExampleKind kind = kAllExamples[t % std::size(kAllExamples)];
    const auto ex = random_example(kind, cfg.dim_k, cfg.dim_h, rng, tol);
    base.run([&] { return is_member(ex.dom, ex.dom.base_point(), tol) ? 0.0 : 1.0; });
    conn.run([&] {
      const auto r = connectivity_class(ex.dom, tol);
      return r.compact_range && r.polynomial ? 0.0 : 1.0;
    });
  }

  // Full-space domains with D invertible: random C, rank-one C, C = 0 and 3 x 3.
  struct Shape {
    Eigen::Index k, h;
    int rank;
  };
  const std::vector<Shape> shapes = {{cfg.dim_k, cfg.dim_h, -1}, {3, 3, -1}, {cfg.dim_k, cfg.dim_h, 1},
                                     {cfg.dim_k, cfg.dim_h, 0}};
  const int per_domain = 5 * cfg.trials;
  int in_band = 0;
  int singular_samples = 0;
  for (const auto& shape : shapes) {
    Matrix c = rng.matrix(shape.h, shape.k);
    if (shape.rank == 0) c.setZero();
    if (shape.rank == 1) c = rng.vector(shape.h) * rng.vector(shape.k).adjoint();
    Matrix d = rng.matrix(shape.h, shape.h);
    while (condition_number(d) > 20.0) d = rng.matrix(shape.h, shape.h);
    const auto space = OperatorSpace::full(shape.k, shape.h);
    Matrix z0 = Matrix::Zero(shape.k, shape.h);
    const auto dom = new_domain(space, c, d, z0, tol, "det");
    for (int i = 0; i < per_domain; ++i) {
      Matrix z = rng.matrix(shape.k, shape.h);
      const int mode = i % 3;
      if (mode > 0 && shape.rank != 0) {
        // (CZ + D) v = 0 for v = D^-1 C w and Z = -w v* / |v|^2 + Z' (I - v v* / |v|^2)
        const Vector w = rng.vector(shape.k);
        const Vector v = d.partialPivLu().solve(c * w);
        if (v.norm() > 1e-6) {
          const Matrix p = v * v.adjoint() / v.squaredNorm();
          z = -w * v.adjoint() / v.squaredNorm() + z * (identity(shape.h) - p);
          if (mode == 2) z += std::pow(10.0, rng.uniform(-13.0, -6.0)) * Sampler::with_norm(rng.matrix(shape.k, shape.h), 1.0);
        }
      }
      det.run([&] {
        const double smin = min_singular_value(dom.denominator(z));
        const bool svd_singular = smin <= tol.inv_tol;
        if (svd_singular) ++singular_samples;
        if (det_says_singular(dom, z, tol) == svd_singular) return 0.0;
        if (smin <= 11.0 * tol.inv_tol) {
          ++in_band;
          return 0.0;
        }
        return 1.0;
      });
    }
  }
  det.note("band mismatches: " + std::to_string(in_band) + ", singular samples: " + std::to_string(singular_samples));

  const auto space = OperatorSpace::full(cfg.dim_k, cfg.dim_h);
  const Vector x = rng.unit_vector(cfg.dim_h);
  const Vector y = rng.unit_vector(cfg.dim_k);
  const Complex dd = std::polar(rng.uniform(0.3, 1.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  const auto dom5 = example5_rank_one(space, x, y, dd, tol);
  const int rank_trials = 2 * cfg.trials;
  for (int i = 0; i < rank_trials; ++i) {
    Matrix z = rng.matrix(cfg.dim_k, cfg.dim_h);
    if (i % 2 == 1) {
      // push (Zx, y) onto -d
      const Complex s = y.dot(z * x);
      z += (-dd - s) * y * x.adjoint();
    }
    rank_one.run([&] {
      const Complex scalar = dd + y.dot(z * x);
      const bool scalar_member = std::abs(scalar) > tol.inv_tol;
      const bool matrix_member = try_invert(dom5.denominator(z), tol).has_value();
      return scalar_member == matrix_member ? 0.0 : 1.0;
    });
  }
  emit(out, {&base, &det, &rank_one, &conn});
}

// ---------------------------------------------------------------- symmetry

void group_symmetry(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check inv("symmetry.involution", "U_Y(U_Y(Z)) = Z", 1e-8);
  Check fixed("symmetry.fixed_point", "U_Y(Y) = Y", 1e-10);
  Check coeff("symmetry.coefficient_square", "M^2 = I", 1e-10);
  Check deriv("symmetry.derivative", "DU_Y(Y) = -I", 1e-6);
  Check space("symmetry.space_preservation", "U_Y(Z) in space", tol.eq_tol);
  Check quad("symmetry.quadric_closed_form", "(2(z, y)y - (y, y)z) / (z, z)", 1e-9);

  for (int t = 0; t < cfg.trials; ++t) {
    const ExampleKind kind = kAllExamples[t % std::size(kAllExamples)];
    const auto ex = random_example(kind, cfg.dim_k, cfg.dim_h, rng, tol);
    const Matrix y = sample_member(ex.dom, rng, tol);
    const Matrix z = sample_member(ex.dom, rng, tol);
    const Matrix dir = sample_direction(ex.dom, rng);
    const LFTMap u = symmetry_U(ex.dom, y, tol);
    Matrix uz;
    inv.run([&] {
      uz = u.apply(z, tol);
      return rel(u.apply(uz, tol) - z, z);
    });
    fixed.run([&] { return norm(u.apply(y, tol) - y); });
    coeff.run([&] {
      const Matrix m = symmetry_coeff_matrix(ex.dom, y, tol);
      return norm(m * m - identity(m.rows()));
    });
    deriv.run([&] { return norm(derivative_at_fixed_point(ex.dom, y, dir, 1e-4, tol) + dir); });
    space.run([&] { return ex.dom.space().residual(uz) / (1.0 + uz.norm()); });
    if (ex.quadric) {
      quad.run([&] {
        const auto& q = *ex.quadric;
        const Vector expected = QuadricDomain::symmetry_closed_form(q.coords(y), q.coords(z));
        const Vector got = q.coords(uz);
        return (got - expected).norm() / (1.0 + expected.norm());
      });
    }
  }
  emit(out, {&inv, &fixed, &coeff, &deriv, &space, &quad});
}

// ---------------------------------------------------------------- chain

double second_difference(const std::function<Matrix(const Matrix&)>& f, const Matrix& z, const Matrix& d1,
                         const Matrix& d2) {
  return norm(f(z + d1 + d2) - f(z + d1) - f(z + d2) + f(z));
}

/// Straight segment first; when it refuses, a two-leg path through a random
/// point off the segment is supplied instead.
AutomorphismChain chain_with_detour(const DomainSpec& dom, const Matrix& z0, const Matrix& w0, Sampler& rng,
                                    const Tolerance& tol, int& detours) {
  try {
    return transitive_chain(dom, w0, std::nullopt, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PathLeavesDomain) throw;
  }
  ++detours;
  const double reach = 0.5 * norm(w0 - z0) + 0.1;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix mid = 0.5 * (z0 + w0) + reach * sample_direction(dom, rng);
    if (!is_member(dom, mid, tol)) continue;
    try {
      return transitive_chain(dom, w0, std::vector<Matrix>{z0, mid, w0}, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PathLeavesDomain) throw;
    }
  }
  throw Error(ErrorKind::PathLeavesDomain, "no detour path found");
}

void group_chain(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check composite("chain.composite", "U_1 ... U_n (Z0) = W0", 1e-8);
  Check structure("chain.step_bound", "||(C Z_k-1 + D)^-1 C (Z_k - Z_k-1)|| < 1, n even", kChainStepMargin);
  Check fold("chain.fold", "U_W(Y) + [I + (W - Y)X](Z - Y)[I + X(W - Y)]", 1e-9);
  Check affine("chain.fold_affinity", "second difference of the folded map = 0", 1e-8);

  const int pairs = std::max(1, cfg.trials / 2);
  int max_factors = 0;
  int detours = 0;
  for (const ExampleKind kind : kAllExamples) {
    for (int p = 0; p < pairs; ++p) {
      const auto ex = random_example(kind, cfg.dim_k, cfg.dim_h, rng, tol);
      const Matrix z0 = sample_member(ex.dom, rng, tol);
      const DomainSpec dom = ex.dom.rebased(z0, tol);
      const Matrix w0 = sample_member(dom, rng, tol);
      std::vector<Matrix> probes;
      for (int i = 0; i < 20; ++i) probes.push_back(sample_step(dom, z0, rng.uniform(0.05, 0.5), rng, tol));
      const Matrix d1 = 0.1 * sample_direction(dom, rng);
      const Matrix d2 = 0.1 * sample_direction(dom, rng);

      std::optional<AutomorphismChain> chain;
      composite.run([&] {
        chain = chain_with_detour(dom, z0, w0, rng, tol, detours);
        return rel(chain->apply(z0, tol) - w0, w0);
      });
      if (!chain) {
        structure.run([] { return kInf; });
        continue;
      }
      max_factors = std::max(max_factors, static_cast<int>(chain->factors.size()));
      structure.run([&] {
        if (chain->factors.size() % 2 != 0) return kInf;
        double worst = 0.0;
        for (double s : chain->step_norms) worst = std::max(worst, s);
        return worst;
      });
      const double fold_before = fold.max();
      for (const auto& probe : probes)
        fold.run([&] {
          const Matrix pointwise = chain->apply(probe, tol);
          return rel(chain->folded.apply(probe) - pointwise, pointwise);
        });
      if (fold.max() > fold_before) {
        fold.note("worst at " + std::string(to_string(kind)) + ", " + std::to_string(chain->factors.size()) +
                  " factors");
      }
      affine.run([&] { return second_difference([&](const Matrix& m) { return chain->folded.apply(m); }, z0, d1, d2); });
    }
  }
  structure.note("max factors: " + std::to_string(max_factors));
  composite.note("detour paths supplied: " + std::to_string(detours));
  emit(out, {&composite, &structure, &fold, &affine});
}

// ---------------------------------------------------------------- affine

void group_affine(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check uu("affine.compose_UU", "U_W U_Y = U_W(Y) + [I + (W - Y)X](Z - Y)[I + X(W - Y)]", 1e-9);
  Check phi("affine.phi", "I + X0[phi(Z) - Z0] = R^1/2 [I + X0(Z - Z0)] R^1/2", 1e-9);
  Check phi_members("affine.phi_members", "phi(D) in D", 0.0);
  Check vv("affine.involution_V", "V^2 = id, V(Z0) = W0, V_Z0 = U_Z0", 1e-9);
  Check equiv("affine.equivalence", "C2 phi(Z) + D2 = (C1 Z + D1)(C1 Z1 + D1)^-1 (C2 Z2 + D2)", 1e-9);
  Check equiv_members("affine.equivalence_members", "phi(D1) in D2", 0.0);
  Check second("affine.second_difference", "phi(Z + A + B) - phi(Z + A) - phi(Z + B) + phi(Z) = 0", 1e-8);
  Check space("affine.space_preservation", "phi(Z) in space", tol.eq_tol);

  for (int t = 0; t < cfg.trials; ++t) {
    const ExampleKind kind = kAllExamples[t % std::size(kAllExamples)];
    const auto ex = random_example(kind, cfg.dim_k, cfg.dim_h, rng, tol);
    const Matrix z0 = sample_member(ex.dom, rng, tol);
    const DomainSpec dom = ex.dom.rebased(z0, tol);
    const Matrix y = sample_member(dom, rng, tol);
    const Matrix w = sample_member(dom, rng, tol);
    const Matrix z = sample_member(dom, rng, tol);
    const Matrix w0 = sample_step(dom, z0, rng.uniform(0.0, 0.8), rng, tol);
    const Matrix near = sample_step(dom, z0, rng.uniform(0.0, 0.5), rng, tol);
    const Matrix d1 = 0.1 * sample_direction(dom, rng);
    const Matrix d2 = 0.1 * sample_direction(dom, rng);

    uu.run([&] {
      const AffineMap a = compose_UU_affine(dom, w, y, tol);
      const Matrix pointwise = symmetry_U(dom, w, tol).apply(symmetry_U(dom, y, tol).apply(z, tol), tol);
      second.run([&] { return second_difference([&](const Matrix& m) { return a.apply(m); }, z, d1, d2); });
      return rel(a.apply(z) - pointwise, pointwise);
    });

    phi.run([&] {
      const AffineMap f = affine_phi(dom, w0, tol);
      const Matrix image = f.apply(z);
      phi_members.run([&] { return is_member(dom, image, tol) ? 0.0 : 1.0; });
      space.run([&] { return dom.space().residual(image) / (1.0 + image.norm()); });
      second.run([&] { return second_difference([&](const Matrix& m) { return f.apply(m); }, z, d1, d2); });
      return std::max(norm(f.apply(z0) - w0), affine_phi_identity_residual(dom, f, z) / (1.0 + norm(z)));
    });

    vv.run([&] {
      const LFTMap v = involution_V(dom, w0, tol);
      const double endpoint = norm(v.apply(z0, tol) - w0);
      const double square = rel(v.apply(v.apply(near, tol), tol) - near, near);
      const LFTMap v0 = involution_V(dom, z0, tol);
      const Matrix u0 = symmetry_U(dom, z0, tol).apply(near, tol);
      return std::max({endpoint, square, rel(v0.apply(near, tol) - u0, u0)});
    });

    // Full-space pair with C2 = C1 R.
    const Eigen::Index k = cfg.dim_k, h = cfg.dim_h;
    const auto full = OperatorSpace::full(k, h);
    const Matrix c1 = rng.matrix(h, k);
    const Matrix d1m = rng.matrix(h, h);
    Matrix r = rng.matrix(k, k);
    while (condition_number(r) > 20.0) r = rng.matrix(k, k);
    const Matrix c2 = c1 * r;
    const Matrix d2m = rng.matrix(h, h);
    const Matrix e1 = 0.1 * Sampler::with_norm(rng.matrix(k, h), 1.0);
    const Matrix e2 = 0.1 * Sampler::with_norm(rng.matrix(k, h), 1.0);
    equiv.run([&] {
      const auto pre1 = new_domain(full, c1, d1m, Matrix::Zero(k, h), tol, "pre");
      const Matrix z1 = sample_member(pre1, rng, tol);
      const auto dom1 = pre1.rebased(z1, tol);
      const auto pre2 = new_domain(full, c2, d2m, Matrix::Zero(k, h), tol, "pre");
      const Matrix z2 = sample_member(pre2, rng, tol);
      const auto dom2 = pre2.rebased(z2, tol);
      const AffineMap e = affine_equivalence(dom1, dom2, r, z1, z2, tol);
      const Matrix probe = sample_member(dom1, rng, tol);
      const Matrix image = e.apply(probe);
      equiv_members.run([&] { return is_member(dom2, image, tol) ? 0.0 : 1.0; });
      second.run([&] { return second_difference([&](const Matrix& m) { return e.apply(m); }, probe, e1, e2); });
      const Matrix lhs = c2 * image + d2m;
      const Matrix rhs = dom1.denominator(probe) * dom1.denominator(z1).inverse() * dom2.denominator(z2);
      return std::max(norm(e.apply(z1) - z2), rel(lhs - rhs, rhs));
    });
  }
  emit(out, {&uu, &phi, &phi_members, &vv, &equiv, &equiv_members, &second, &space});
}

// ---------------------------------------------------------------- Potapov-Ginzburg

Matrix sample_contractive(const Matrix& j, const Matrix& e, Sampler& rng, const Tolerance& tol) {
  const Eigen::Index n = j.rows();
  for (;;) {
    const Matrix z = Sampler::with_norm(rng.matrix(n, n), rng.uniform(0.0, 3.0));
    if (!in_contractive_set(j, z, tol.eq_tol)) continue;
    const Matrix den = e * z + identity(n) - e;
    if (condition_number(den) > 1e3) continue;
    return z;
  }
}

void group_potapov(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check ball("pg.image_in_ball", "U_E(D1) in D2: I - W* W > 0", 0.0);
  Check inv("pg.involution", "U_E(U_E(Z)) = Z", 1e-9);

  const auto space = OperatorSpace::full(2, 2);
  Matrix half = Matrix::Zero(2, 2);
  half(0, 0) = 1.0;
  const std::vector<Matrix> projections = {Matrix::Zero(2, 2), half, identity(2)};
  double min_margin = kInf;
  for (const auto& e : projections) {
    const Matrix j = identity(2) - 2.0 * e;
    const LFTMap u = potapov_ginzburg(space, e, tol);
    for (int t = 0; t < cfg.trials; ++t) {
      const Matrix z = sample_contractive(j, e, rng, tol);
      Matrix w;
      ball.run([&] {
        w = u.apply(z, tol);
        const double margin = min_hermitian_eigenvalue(identity(2) - w.adjoint() * w);
        min_margin = std::min(min_margin, margin);
        const bool in_d = try_invert(e * w + identity(2) - e, tol).has_value();
        return margin > 0.0 && in_d ? 0.0 : 1.0;
      });
      inv.run([&] { return rel(u.apply(w, tol) - z, z); });
    }
  }
  ball.note("min margin: " + std::to_string(min_margin));
  emit(out, {&ball, &inv});
}

// ---------------------------------------------------------------- Liouville

void group_liouville(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  Check ends("liouville.endpoints", "f(0) = Z0, f(1) = Z", 1e-8);
  Check inv("liouville.invertible", "C f(l) + D invertible", 0.0);
  Check ident("liouville.identity", "(C Z0 + D)^-1 [C f(l) + D] = b_l(W)", 1e-8);
  Check binom("liouville.binomial_inverse", "b_l(W) b_-l(W) = I", 1e-9);

  const int curves = std::max(1, cfg.trials / 10);
  for (int t = 0; t < curves; ++t) {
    const ExampleKind kind = kAllExamples[t % std::size(kAllExamples)];
    const auto ex = random_example(kind, cfg.dim_k, cfg.dim_h, rng, tol);
    const Matrix z0 = sample_member(ex.dom, rng, tol);
    const DomainSpec dom = ex.dom.rebased(z0, tol);
    const Matrix z = sample_step(dom, z0, rng.uniform(0.05, 0.8), rng, tol);
    std::optional<LiouvilleCurve> f;
    ends.run([&] {
      f.emplace(dom, z, tol);
      return std::max(norm((*f)(0.0) - z0), norm((*f)(1.0) - z)) / (1.0 + norm(z));
    });
    if (!f) continue;
    const Matrix& w = f->w();
    const Eigen::Index n = w.rows();
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const Complex lambda = std::polar(0.2 * (i + 1), 2.0 * std::numbers::pi * j / 10.0);
        inv.run([&] { return is_member(dom, (*f)(lambda), tol) ? 0.0 : 1.0; });
        ident.run([&] { return norm(f->denominator_ratio(lambda) - binomial_series(lambda, w, tol)); });
        binom.run([&] {
          return norm(binomial_series(lambda, w, tol) * binomial_series(-lambda, w, tol) - identity(n));
        });
      }
    }
  }
  emit(out, {&ends, &inv, &ident, &binom});
}

// ---------------------------------------------------------------- circular

Matrix with_singular_values(Sampler& rng, Eigen::Index n, double lo, double hi) {
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) s(i, i) = rng.uniform(lo, hi);
  return rng.unitary(n) * s * rng.unitary(n);
}

Matrix siegel_sample(const SiegelSpec& spec, Sampler& rng) {
  const Matrix z1 = Sampler::with_norm(rng.matrix(spec.dim_k, spec.dim_h), rng.uniform(0.0, 1.5));
  const double floor = std::sqrt(1.0 + std::pow(norm(z1), 2)) * 1.01;
  return vstack(z1, with_singular_values(rng, spec.dim_h, floor, floor + 1.5));
}

/// Random J-unitary for J = diag(I_k, -I_h).
Matrix random_j_unitary(Sampler& rng, Eigen::Index k, Eigen::Index h) {
  const Matrix b = Sampler::with_norm(rng.matrix(k, h), rng.uniform(0.0, 0.9));
  return ball_coefficient(b) * block2x2(rng.unitary(k), Matrix::Zero(k, h), Matrix::Zero(h, k), rng.unitary(h));
}

Matrix product_sample(const SiegelSpec& spec, Sampler& rng) {
  const Matrix w2 = with_singular_values(rng, spec.dim_h, 0.5, 2.0);
  const Matrix b = Sampler::with_norm(rng.matrix(spec.dim_k, spec.dim_h), rng.uniform(0.0, 0.9));
  return vstack(b * w2, w2);
}

void group_circular(const RunConfig& cfg, Sampler& rng, Records& out) {
  const Tolerance& tol = cfg.tol;
  const SiegelSpec spec(cfg.dim_h, cfg.dim_k);
  const Matrix j = spec.j();
  const Eigen::Index n = spec.dim_h + spec.dim_k;

  Check cayley("circular.cayley_involution", "T(T(Z)) = Z", 1e-10);
  Check cayley_ball("circular.cayley_ball", "Z in D iff ||T(Z)|| < 1", 0.0);
  Check siegel("circular.siegel_maps", "h(Z) = L Z U, L* J L = J", 0.0);
  Check invariant("circular.siegel_invariant", "I + Z_s* J Z_s = U* (I + Z_r* J Z_r) U", 1e-8);
  Check isometry("circular.isometry_identity", "L(Z^-1) = U L(Z)^-1 U, U = L(I)", 1e-10);
  Check precheck("circular.isometry_precheck", "||L(Z)|| = ||Z||", 0.0);
  Check exterior("circular.exterior_maps", "I < Z* Z implies I < L(Z)* L(Z)", 0.0);
  Check tb_ball("circular.tb_ball", "||T_B(Z)|| < 1", 0.0);
  Check tb_zero("circular.tb_zero", "T_B(-B) = 0", 1e-12);
  Check tb_inv("circular.tb_inverse", "T_-B(T_B(Z)) = Z", 1e-8);
  Check tb_j("circular.tb_j_unitary", "M* J M = J", 1e-10);
  Check prod_end("circular.product_endpoint", "L([0; I]) = W", 1e-10);
  Check prod_j("circular.product_j_unitary", "M* J M = J", 1e-10);
  Check prod_maps("circular.product_maps", "L(D) in D, L^-1(D) in D", 0.0);
  Check prod_h("circular.product_h", "h(Z) = (Z1 Z2^-1, Z2^-1)", 1e-10);
  Check hyp_end("circular.hyperbolic_endpoint", "L2 Lw L1 f = z1", 1e-9);
  Check hyp_cert("circular.hyperbolic_certificate", "L* J L = c J, c > 0", 1e-9);
  Check hyp_deg("circular.hyperbolic_degenerate", "z1 = L_w1^-1 L f", 1e-9);
  Check hyp_pres("circular.hyperbolic_preserves", "(J Lz, Lz) < 0", 0.0);

  for (int t = 0; t < cfg.trials; ++t) {
    const Matrix z = siegel_sample(spec, rng);
    cayley.run([&] { return norm(cayley_T(spec, cayley_T(spec, z, tol), tol) - z); });
    cayley_ball.run([&] {
      const Matrix tz = cayley_T(spec, z, tol);
      const bool ball = norm(tz) < 1.0 && try_invert(spec.lower(tz), tol).has_value();
      return ball == siegel_member(spec, z, tol) ? 0.0 : 1.0;
    });
  }

  {
    const SiegelMap h = siegel_linear_auto(spec, random_j_unitary(rng, spec.dim_k, spec.dim_h),
                                           rng.unitary(spec.dim_h), tol);
    for (int t = 0; t < cfg.trials; ++t) {
      const Matrix z = siegel_sample(spec, rng);
      siegel.run([&] {
        return siegel_member(spec, h.apply(z), tol) && siegel_member(spec, h.apply_inverse(z), tol) ? 0.0 : 1.0;
      });
    }
  }
  for (int t = 0; t < 20; ++t) {
    const SiegelMap h = siegel_linear_auto(spec, random_j_unitary(rng, spec.dim_k, spec.dim_h),
                                           rng.unitary(spec.dim_h), tol);
    const double r = rng.uniform(1.1, 3.0);
    const Matrix zr = vstack(Matrix::Zero(spec.dim_k, spec.dim_h), r * identity(spec.dim_h));
    invariant.run([&] {
      const Matrix zs = h.apply(zr);
      const Matrix form = identity(spec.dim_h) + zs.adjoint() * j * zs;
      const Matrix expected = h.u.adjoint() * (identity(spec.dim_h) + zr.adjoint() * j * zr) * h.u;
      const double s = std::sqrt(1.0 - min_hermitian_eigenvalue(form));
      return std::max(norm(form - expected) / (r * r), std::abs(s - r));
    });
  }

  {
    const Eigen::Index m = square_dim(cfg);
    const auto space = OperatorSpace::full(m, m);
    const Matrix p = rng.unitary(m), q = rng.unitary(m);
    const auto pzq = SpaceLinearMap::from_function(space, [&](const Matrix& z) { return Matrix(p * z * q); });
    const auto tr = SpaceLinearMap::from_function(space, [](const Matrix& z) { return Matrix(z.transpose()); });
    const auto twice = SpaceLinearMap::from_function(space, [](const Matrix& z) { return Matrix(2.0 * z); });
    for (const auto* l : {&pzq, &tr}) {
      const std::uint64_t seed = rng.engine()();
      isometry.run([&] {
        const auto rep = isometry_inverse_identity_check(*l, tol, seed, cfg.trials);
        return std::max(rep.identity_residual, rep.unitary_residual);
      });
      exterior.run([&] {
        const auto rep = exterior_linear_auto_check(*l, tol, seed, cfg.trials);
        return static_cast<double>(rep.samples - rep.preserved);
      });
    }
    precheck.run([&] {
      try {
        isometry_inverse_identity_check(twice, tol, 1, 10);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotIsometry) return 0.0;
      }
      return 1.0;
    });
  }

  for (int t = 0; t < cfg.trials; ++t) {
    const Matrix b = Sampler::with_norm(rng.matrix(spec.dim_k, spec.dim_h), rng.uniform(0.0, 0.9));
    const Matrix z = Sampler::with_norm(rng.matrix(spec.dim_k, spec.dim_h), rng.uniform(0.0, 0.99));
    const LFTMap tb = mobius_TB(b, tol);
    const LFTMap tmb = mobius_TB(-b, tol);
    tb_ball.run([&] { return in_unit_ball(tb.apply(z, tol), 0.0) ? 0.0 : 1.0; });
    tb_zero.run([&] { return norm(tb.apply(-b, tol)); });
    tb_inv.run([&] { return norm(tmb.apply(tb.apply(z, tol), tol) - z); });
    tb_j.run([&] {
      const Matrix m = tb.coefficient_matrix();
      return norm(m.adjoint() * j * m - j);
    });
  }

  for (int t = 0; t < cfg.trials; ++t) {
    const Matrix w = product_sample(spec, rng);
    const Matrix z = product_sample(spec, rng);
    const Matrix origin = vstack(Matrix::Zero(spec.dim_k, spec.dim_h), identity(spec.dim_h));
    std::optional<ProductTransitive> l;
    prod_end.run([&] {
      l = product_domain_transitive(spec, w, tol);
      return norm(l->apply(origin) - w);
    });
    if (!l) continue;
    prod_j.run([&] { return norm(l->m.adjoint() * j * l->m - j); });
    prod_maps.run([&] {
      return product_member(spec, l->apply(z), tol) && product_member(spec, l->apply_inverse(z), tol) ? 0.0 : 1.0;
    });
    prod_h.run([&] {
      const auto [ball_part, inv_part] = product_h(spec, l->apply(origin), tol);
      const auto [zb, zi] = product_h(spec, z, tol);
      const bool maps = norm(zb) < 1.0 && try_invert(zi, tol).has_value();
      const double direct =
          std::max(norm(ball_part - spec.upper(w) * spec.lower(w).inverse()), norm(inv_part - spec.lower(w).inverse()));
      return maps ? direct : kInf;
    });
  }

  int degenerate = 0;
  const int hyperbolic_trials = 2 * cfg.trials;
  for (int t = 0; t < hyperbolic_trials; ++t) {
    const bool force_degenerate = t % 5 == 4;
    const Eigen::Index max_dim = std::clamp<Eigen::Index>(n, 3, 4);
    const Eigen::Index dim = rng.integer(force_degenerate ? 3 : 2, static_cast<int>(max_dim));
    Vector eig(dim);
    eig(0) = 1.0;
    eig(dim - 1) = -1.0;
    for (Eigen::Index i = 1; i + 1 < dim; ++i) eig(i) = rng.uniform(-2.0, 2.0);
    if (force_degenerate) eig(1) = rng.uniform(-2.0, -0.2);
    const Matrix q = rng.unitary(dim);
    Matrix jm = q * eig.asDiagonal() * q.adjoint();
    jm = 0.5 * (jm + jm.adjoint());
    const HyperbolicSpec hs = HyperbolicSpec::make(jm, tol, Vector(q.col(0)), Vector(q.col(dim - 1)));
    // coordinates in the frame [e, K, f]
    Vector coords = Vector::Zero(dim);
    const Matrix& bb = hs.b_block();
    if (force_degenerate) {
      Vector w = Vector::Zero(dim - 2);
      Eigen::SelfAdjointEigenSolver<Matrix> es(bb);
      w = es.eigenvectors().col(0) * rng.uniform(0.3, 2.0) * rng.unit_phase();
      coords.segment(1, dim - 2) = w;
    } else {
      coords(0) = rng.complex_uniform();
      if (dim > 2) coords.segment(1, dim - 2) = rng.vector(dim - 2);
      const double form = std::norm(coords(0)) +
                          (dim > 2 ? (coords.segment(1, dim - 2).dot(bb * coords.segment(1, dim - 2))).real() : 0.0);
      coords(dim - 1) = std::sqrt(std::max(0.0, form) + rng.uniform(0.05, 2.0)) * rng.unit_phase();
    }
    const Vector z1 = hs.frame() * coords;
    std::optional<HyperbolicTransitive> l;
    Check& endpoint = force_degenerate ? hyp_deg : hyp_end;
    endpoint.run([&] {
      l = hyperbolic_transitive(hs, z1, tol);
      if (l->degenerate) ++degenerate;
      return (l->l * hs.f() - z1).norm();
    });
    if (!l) continue;
    hyp_cert.run([&] {
      if (!(l->scale > 0.0)) return kInf;
      return norm(l->l.adjoint() * hs.j() * l->l - l->scale * hs.j()) / l->scale;
    });
    for (int s = 0; s < 50; s += 10) {
      hyp_pres.run([&] {
        int bad = 0;
        for (int i = 0; i < 10; ++i) {
          Vector c = rng.vector(dim);
          const double form = std::norm(c(0)) + (dim > 2 ? (c.segment(1, dim - 2).dot(bb * c.segment(1, dim - 2))).real() : 0.0);
          c(dim - 1) = std::sqrt(std::max(0.0, form) + rng.uniform(0.05, 2.0)) * rng.unit_phase();
          const Vector z = hs.frame() * c;
          if (!hyperbolic_member(hs, z, tol)) continue;
          const Vector lz = l->l * z;
          if (!(lz.dot(hs.j() * lz).real() < 0.0)) ++bad;
        }
        return static_cast<double>(bad);
      });
    }
  }
  hyp_deg.note("degenerate branch cases: " + std::to_string(degenerate));
  emit(out, {&cayley, &cayley_ball, &siegel, &invariant, &isometry, &precheck, &exterior, &tb_ball, &tb_zero, &tb_inv,
             &tb_j, &prod_end, &prod_j, &prod_maps, &prod_h, &hyp_end, &hyp_cert, &hyp_deg, &hyp_pres});
}

using GroupFn = void (*)(const RunConfig&, Sampler&, Records&);

struct Group {
  const char* name;
  GroupFn fn;
};

const std::vector<Group>& groups() {
  static const std::vector<Group> g = {
      {"linalg", group_linalg},     {"opspace", group_opspace}, {"lftdom", group_lftdom},
      {"symmetry", group_symmetry}, {"chain", group_chain},     {"affine", group_affine},
      {"potapov", group_potapov},   {"liouville", group_liouville}, {"circular", group_circular},
  };
  return g;
}

void run_one(const RunConfig& config, std::size_t index, Records& out) {
  Sampler rng(derive_seed(config.seed, index));
  groups()[index].fn(config, rng, out);
}

}  // namespace

const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& g : groups()) v.emplace_back(g.name);
    return v;
  }();
  return names;
}

Report run_verification(const RunConfig& config) {
  validate(config);
  Report report{config, {}};
  for (std::size_t i = 0; i < groups().size(); ++i) run_one(config, i, report.suites);
  return report;
}

Report run_group(const RunConfig& config, const std::string& group) {
  validate(config);
  Report report{config, {}};
  for (std::size_t i = 0; i < groups().size(); ++i) {
    if (group == groups()[i].name) {
      run_one(config, i, report.suites);
      return report;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite group '" + group + "'");
}

}  // namespace lftd
