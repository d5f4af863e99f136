#include "lftd/circular.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "lftd/random.hpp"

namespace lftd {

namespace {

Matrix signature(Eigen::Index plus, Eigen::Index minus) {
  Matrix j = Matrix::Zero(plus + minus, plus + minus);
  j.topLeftCorner(plus, plus).setIdentity();
  j.bottomRightCorner(minus, minus) = -Matrix::Identity(minus, minus);
  return j;
}

Matrix checked_inverse(const Matrix& m, const Tolerance& tol, std::string_view what) {
  auto inv = try_invert(m, tol);
  if (!inv) throw Error(ErrorKind::SingularDenominator, std::string(what) + " is not invertible");
  return *inv;
}

// Random invertible member with condition number at most 10. Falls back to a
// perturbation of the identity, which every power algebra contains.
Matrix well_conditioned_member(const OperatorSpace& space, Sampler& rng) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Matrix z = rng.member_of(space);
    if (condition_number(z) <= 10.0) return Sampler::with_norm(z, rng.uniform(0.5, 2.0));
  }
  const Matrix m = Sampler::with_norm(rng.member_of(space), rng.uniform(0.0, 0.8));
  return rng.unit_phase() * (identity(space.dim_h()) + m);
}

}  // namespace

SiegelSpec::SiegelSpec(Eigen::Index h, Eigen::Index k) : dim_h(h), dim_k(k) {
  if (dim_h < 1) throw Error(ErrorKind::InvalidArgument, "dim_h must be positive");
  if (dim_k < 1) throw Error(ErrorKind::InvalidArgument, "K must be nonzero (dim_k >= 1)");
}

Matrix SiegelSpec::j() const { return signature(dim_k, dim_h); }

void SiegelSpec::require_shape(const Matrix& z) const {
  if (z.rows() != dim_k + dim_h || z.cols() != dim_h) {
    throw Error(ErrorKind::ShapeMismatch, "expected a (dim_k + dim_h) x dim_h block column");
  }
}

bool siegel_member(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol) {
  spec.require_shape(z);
  const Matrix z1 = spec.upper(z);
  const Matrix z2 = spec.lower(z);
  return is_positive_definite(z2.adjoint() * z2 - z1.adjoint() * z1 - identity(spec.dim_h), tol.eq_tol);
}

SiegelMap siegel_linear_auto(const SiegelSpec& spec, const Matrix& l, const Matrix& u, const Tolerance& tol) {
  const auto n = spec.dim_k + spec.dim_h;
  if (l.rows() != n || l.cols() != n) throw Error(ErrorKind::ShapeMismatch, "L must be (dim_k + dim_h)-square");
  if (u.rows() != spec.dim_h || u.cols() != spec.dim_h) throw Error(ErrorKind::ShapeMismatch, "U must be dim_h-square");
  const Matrix j = spec.j();
  if ((l.adjoint() * j * l - j).norm() > tol.eq_tol) {
    throw Error(ErrorKind::JUnitarityViolation, "L* J L != J");
  }
  if ((u.adjoint() * u - identity(spec.dim_h)).norm() > tol.eq_tol) {
    throw Error(ErrorKind::NotUnitary, "U* U != I");
  }
  return SiegelMap{l, u, checked_inverse(l, tol, "L")};
}

Matrix cayley_T(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol) {
  spec.require_shape(z);
  const Matrix z2_inv = checked_inverse(spec.lower(z), tol, "Z2");
  return vstack(spec.upper(z) * z2_inv, z2_inv);
}

bool exterior_member(const OperatorSpace& space, const Matrix& z, const Tolerance& tol) {
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "exterior domain needs square operators");
  space.require_shape(z, "Z");
  if (!contains(space, z, tol)) throw Error(ErrorKind::MembershipViolation, "Z is not in the space");
  return min_singular_value(z) > 1.0 + tol.eq_tol;
}

SpaceLinearMap::SpaceLinearMap(OperatorSpace space, std::vector<Matrix> images)
    : space_(std::move(space)), images_(std::move(images)) {
  if (static_cast<Eigen::Index>(images_.size()) != space_.dimension()) {
    throw Error(ErrorKind::ShapeMismatch, "need one image per basis element");
  }
  for (const auto& m : images_) space_.require_shape(m, "basis image");
}

SpaceLinearMap SpaceLinearMap::from_function(const OperatorSpace& space,
                                             const std::function<Matrix(const Matrix&)>& f) {
  std::vector<Matrix> images;
  for (const auto& b : space.basis()) images.push_back(f(b));
  return SpaceLinearMap(space, std::move(images));
}

Matrix SpaceLinearMap::apply(const Matrix& z) const {
  const Vector c = space_.coordinates(z);
  Matrix out = Matrix::Zero(space_.dim_k(), space_.dim_h());
  for (Eigen::Index i = 0; i < c.size(); ++i) out += c(i) * images_[static_cast<std::size_t>(i)];
  return out;
}

bool SpaceLinearMap::invertible(const Tolerance& tol) const {
  Matrix coords(space_.dimension(), space_.dimension());
  for (Eigen::Index i = 0; i < coords.cols(); ++i) {
    const auto& img = images_[static_cast<std::size_t>(i)];
    if (!contains(space_, img, tol)) return false;
    coords.col(i) = space_.coordinates(img);
  }
  return numerical_rank(coords, tol.inv_tol) == coords.cols();
}

namespace {

void isometry_precheck(const SpaceLinearMap& l, const Tolerance& tol, Sampler& rng, int samples,
                       double& residual) {
  if (!l.invertible(tol)) throw Error(ErrorKind::NotIsometry, "L is not an invertible map of the space");
  residual = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Matrix z = Sampler::with_norm(rng.member_of(l.space()), rng.uniform(0.1, 2.0));
    const double nz = operator_norm(z);
    const double diff = std::abs(operator_norm(l.apply(z)) - nz);
    residual = std::max(residual, diff);
    if (diff > tol.eq_tol * (1.0 + nz)) {
      throw Error(ErrorKind::NotIsometry, "||L(Z)|| = " + std::to_string(operator_norm(l.apply(z))) +
                                              " differs from ||Z|| = " + std::to_string(nz));
    }
  }
}

}  // namespace

IsometryReport isometry_inverse_identity_check(const SpaceLinearMap& l, const Tolerance& tol, std::uint64_t seed,
                                               int samples) {
  const auto& space = l.space();
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "isometry identity needs square operators");
  const Matrix id = identity(space.dim_h());
  if (!contains(space, id, tol)) throw Error(ErrorKind::HypothesisViolation, "space does not contain I");
  Sampler rng(seed);
  IsometryReport report;
  report.samples = samples;
  isometry_precheck(l, tol, rng, samples, report.isometry_residual);
  report.u = l.apply(id);
  checked_inverse(report.u, tol, "L(I)");
  report.unitary_residual = (report.u.adjoint() * report.u - id).norm();
  for (int i = 0; i < samples; ++i) {
    const Matrix z = well_conditioned_member(space, rng);
    const Matrix z_inv = checked_inverse(z, tol, "sample Z");
    const Matrix lz_inv = checked_inverse(l.apply(z), tol, "L(Z)");
    const double r = (l.apply(z_inv) - report.u * lz_inv * report.u).norm() / (1.0 + z_inv.norm());
    report.identity_residual = std::max(report.identity_residual, r);
  }
  return report;
}

ExteriorReport exterior_linear_auto_check(const SpaceLinearMap& l, const Tolerance& tol, std::uint64_t seed,
                                          int samples) {
  const auto& space = l.space();
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "exterior domain needs square operators");
  Sampler rng(seed);
  double pre = 0.0;
  isometry_precheck(l, tol, rng, samples, pre);
  const Matrix u = l.apply(identity(space.dim_h()));
  checked_inverse(u, tol, "L(I)");
  ExteriorReport report;
  report.min_image_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    Matrix z = well_conditioned_member(space, rng);
    z *= rng.uniform(1.05, 3.0) / min_singular_value(z);
    if (!exterior_member(space, z, tol)) continue;
    ++report.samples;
    const Matrix img = l.apply(z);
    report.min_image_margin = std::min(report.min_image_margin, min_singular_value(img) - 1.0);
    if (exterior_member(space, img, tol)) ++report.preserved;
  }
  return report;
}

Matrix ball_coefficient(const Matrix& b) {
  const auto m = b.rows();
  const auto n = b.cols();
  const Matrix left = hpd_inv_sqrt(identity(m) - b * b.adjoint());
  const Matrix right = hpd_inv_sqrt(identity(n) - b.adjoint() * b);
  return block2x2(left, b * right, right * b.adjoint(), right);
}

LFTMap mobius_TB(const Matrix& b, const Tolerance& tol) {
  require_finite(b, "B entries");
  const double nb = operator_norm(b);
  if (!(nb < 1.0 - tol.inv_tol)) {
    throw Error(ErrorKind::InvalidArgument, "T_B needs ||B|| < 1, got " + std::to_string(nb));
  }
  return LFTMap::from_coefficients(ball_coefficient(b), b.rows());
}

bool product_member(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol) {
  spec.require_shape(z);
  const Matrix z1 = spec.upper(z);
  const Matrix z2 = spec.lower(z);
  if (min_singular_value(z2) <= tol.inv_tol) return false;
  return is_positive_definite(z2.adjoint() * z2 - z1.adjoint() * z1, tol.eq_tol);
}

ProductTransitive product_domain_transitive(const SiegelSpec& spec, const Matrix& w, const Tolerance& tol) {
  if (!product_member(spec, w, tol)) throw Error(ErrorKind::MembershipViolation, "W is not in the product domain");
  const Matrix w2_inv = checked_inverse(spec.lower(w), tol, "W2");
  const Matrix b = spec.upper(w) * w2_inv;
  const Matrix defect = identity(spec.dim_h) - b.adjoint() * b;
  ProductTransitive out;
  out.b = b;
  out.m = ball_coefficient(b);
  out.m_inv = ball_coefficient(-b);
  out.r = hpd_sqrt(defect) * spec.lower(w);
  out.r_inv = w2_inv * hpd_inv_sqrt(defect);
  return out;
}

std::pair<Matrix, Matrix> product_h(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol) {
  spec.require_shape(z);
  const Matrix z2_inv = checked_inverse(spec.lower(z), tol, "Z2");
  return {spec.upper(z) * z2_inv, z2_inv};
}

HyperbolicSpec HyperbolicSpec::make(const Matrix& j, const Tolerance& tol, std::optional<Vector> e,
                                    std::optional<Vector> f) {
  constexpr double kEigTol = 1e-8;
  if (j.rows() != j.cols() || j.rows() < 2) throw Error(ErrorKind::ShapeMismatch, "J must be square, n >= 2");
  require_finite(j, "J entries");
  if ((j - j.adjoint()).norm() > tol.eq_tol) throw Error(ErrorKind::InvalidArgument, "J is not Hermitian");
  const auto n = j.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(j);
  const auto& ev = es.eigenvalues();

  auto check_eigvec = [&](Vector& v, double lambda, const char* name) {
    if (v.size() != n || v.norm() == 0.0) throw Error(ErrorKind::ShapeMismatch, std::string(name) + " has wrong size");
    v /= v.norm();
    if ((j * v - lambda * v).norm() > kEigTol) {
      throw Error(ErrorKind::SpectrumViolation, std::string(name) + " is not an eigenvector for " +
                                                    std::to_string(lambda));
    }
  };

  HyperbolicSpec spec;
  spec.j_ = j;
  if (e) {
    spec.e_ = *e;
    check_eigvec(spec.e_, 1.0, "e");
  } else {
    Eigen::Index idx = -1;
    for (Eigen::Index i = 0; i < n && idx < 0; ++i) {
      if (std::abs(ev(i) - 1.0) <= kEigTol) idx = i;
    }
    if (idx < 0) throw Error(ErrorKind::SpectrumViolation, "J has no eigenvalue +1");
    spec.e_ = es.eigenvectors().col(idx);
  }
  if (f) {
    spec.f_ = *f;
    check_eigvec(spec.f_, -1.0, "f");
  } else {
    Eigen::Index idx = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(ev(i) + 1.0) <= kEigTol) idx = i;
    }
    if (idx < 0) throw Error(ErrorKind::SpectrumViolation, "J has no eigenvalue -1");
    spec.f_ = es.eigenvectors().col(idx);
  }

  Matrix ef(n, 2);
  ef << spec.e_, spec.f_;
  Eigen::HouseholderQR<Matrix> qr(ef);
  const Matrix q = qr.householderQ();
  spec.frame_.resize(n, n);
  spec.frame_.col(0) = spec.e_;
  spec.frame_.middleCols(1, n - 2) = q.rightCols(n - 2);
  spec.frame_.col(n - 1) = spec.f_;
  spec.b_ = spec.frame_.middleCols(1, n - 2).adjoint() * j * spec.frame_.middleCols(1, n - 2);
  return spec;
}

bool hyperbolic_member(const HyperbolicSpec& spec, const Vector& z, const Tolerance& tol) {
  if (z.size() != spec.dim()) throw Error(ErrorKind::ShapeMismatch, "z has the wrong length");
  return z.dot(spec.j() * z).real() < -tol.eq_tol * std::max(1.0, z.squaredNorm());
}

Matrix hyperbolic_lw(const Matrix& b, const Vector& w) {
  const auto k = w.size();
  const double q = w.dot(b * w).real();
  const Matrix wb = w.adjoint() * b;  // 1 x k
  Matrix l = Matrix::Zero(k + 2, k + 2);
  l(0, 0) = 1.0 - q / 2.0;
  l.block(0, 1, 1, k) = -wb;
  l(0, k + 1) = -q / 2.0;
  l.block(1, 0, k, 1) = w;
  l.block(1, 1, k, k).setIdentity();
  l.block(1, k + 1, k, 1) = w;
  l(k + 1, 0) = q / 2.0;
  l.block(k + 1, 1, 1, k) = wb;
  l(k + 1, k + 1) = 1.0 + q / 2.0;
  return l;
}

namespace {

constexpr double kDegenerateRatio = 1e-3;

Complex phase_of(Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0); }

}  // namespace

HyperbolicTransitive hyperbolic_transitive(const HyperbolicSpec& spec, const Vector& z1, const Tolerance& tol) {
  if (!hyperbolic_member(spec, z1, tol)) {
    throw Error(ErrorKind::MembershipViolation, "z1 is not in the domain (J z, z) < 0");
  }
  const auto n = spec.dim();
  const auto k = n - 2;
  const Matrix& bm = spec.b_block();
  Vector c = spec.frame().adjoint() * z1;

  HyperbolicTransitive out;
  out.pre = identity(n);
  out.degenerate = std::abs(c(0)) + std::abs(c(n - 1)) <= kDegenerateRatio * z1.norm();
  if (out.degenerate) {
    const Vector w1 = c.segment(1, k);
    c = hyperbolic_lw(bm, w1) * c;
    out.pre = hyperbolic_lw(bm, -w1);
    if (std::abs(c(0)) + std::abs(c(n - 1)) <= kDegenerateRatio * c.norm()) {
      throw Error(ErrorKind::Internal, "pre-composition left the point degenerate");
    }
  }

  const Complex alpha = c(0);
  const Complex beta = c(n - 1);
  const Vector w1 = c.segment(1, k);
  const double big_a = std::abs(alpha) + std::abs(beta);
  const double q1 = w1.dot(bm * w1).real();
  out.a = std::abs(alpha) + q1 / (2.0 * big_a);
  out.b = std::abs(beta) - q1 / (2.0 * big_a);
  out.scale = out.b * out.b - out.a * out.a;
  if (!(out.scale > 0.0)) throw Error(ErrorKind::Internal, "b^2 - a^2 is not positive");

  out.l1 = Matrix::Zero(n, n);
  out.l1(0, 0) = out.b;
  out.l1(0, n - 1) = out.a;
  out.l1(n - 1, 0) = out.a;
  out.l1(n - 1, n - 1) = out.b;
  out.l1.block(1, 1, k, k) = std::sqrt(out.scale) * identity(k);
  out.lw = hyperbolic_lw(bm, w1 / big_a);
  out.l2 = identity(n);
  out.l2(0, 0) = phase_of(alpha);
  out.l2(n - 1, n - 1) = phase_of(beta);

  const Matrix frame_l = out.pre * out.l2 * out.lw * out.l1;
  out.l = spec.frame() * frame_l * spec.frame().adjoint();
  return out;
}

}  // namespace lftd
