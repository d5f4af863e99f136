#include "lftd/autgroup.hpp"

#include <cmath>
#include <string>

namespace lftd {

namespace {

void require_member(const DomainSpec& dom, const Matrix& z, std::string_view what, const Tolerance& tol) {
  const Verdict v = member(dom, z, tol);
  if (v != Verdict::Member) {
    throw Error(ErrorKind::MembershipViolation, std::string(what) + " is not in the domain (" +
                                                    std::string(to_string(v)) + ")");
  }
}

Matrix checked_inverse(const Matrix& m, const Tolerance& tol, std::string_view what) {
  auto inv = try_invert(m, tol);
  if (!inv) throw Error(ErrorKind::SingularDenominator, std::string(what) + " is not invertible");
  return *inv;
}

}  // namespace

AffineMap AffineMap::identity(Eigen::Index dim_k, Eigen::Index dim_h) {
  return AffineMap{Matrix::Identity(dim_k, dim_k), Matrix::Identity(dim_h, dim_h), Matrix::Zero(dim_k, dim_h),
                   Matrix::Zero(dim_k, dim_h)};
}

AffineMap AffineMap::then(const AffineMap& next) const {
  return AffineMap{next.left * left, right * next.right, anchor,
                   next.offset + next.left * (offset - next.anchor) * next.right};
}

LFTMap symmetry_U(const DomainSpec& dom, const Matrix& y, const Tolerance& tol) {
  return LFTMap::from_coefficients(symmetry_coeff_matrix(dom, y, tol), dom.dim_k());
}

namespace {

Matrix symmetry_apply_cd(const Matrix& c, const Matrix& d, const Matrix& y, const Matrix& z, const Tolerance& tol) {
  const auto den_inv = try_invert(c * z + d, tol);
  if (!den_inv) throw Error(ErrorKind::SingularDenominator, "C Z + D is singular");
  return y - (z - y) * (*den_inv * (c * y + d));
}

}  // namespace

Matrix symmetry_apply(const DomainSpec& dom, const Matrix& y, const Matrix& z, const Tolerance& tol) {
  dom.space().require_shape(z, "Z");
  return symmetry_apply_cd(dom.c(), dom.d(), y, z, tol);
}

Matrix symmetry_coeff_matrix(const DomainSpec& dom, const Matrix& y, const Tolerance& tol) {
  require_member(dom, y, "symmetry center Y", tol);
  const Matrix x = dom.x_at(y, tol);
  const auto k = dom.dim_k();
  const auto h = dom.dim_h();
  const Matrix yx = y * x;
  return block2x2(-(identity(k) - yx), 2.0 * y - yx * y, x, identity(h) - x * y);
}

Matrix derivative_at_fixed_point(const DomainSpec& dom, const Matrix& y, const Matrix& direction, double step,
                                 const Tolerance& tol) {
  if (!(step >= 1e-8)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be at least 1e-8");
  dom.space().require_shape(direction, "direction");
  const LFTMap u = symmetry_U(dom, y, tol);
  return (u.apply(y + step * direction, tol) - u.apply(y - step * direction, tol)) / (2.0 * step);
}

double step_norm(const DomainSpec& dom, const Matrix& z, const Matrix& w, const Tolerance& tol) {
  return operator_norm(dom.x_at(z, tol) * (w - z));
}

Matrix find_midpoint_Y(const DomainSpec& dom, const Matrix& z, const Matrix& w, const Tolerance& tol) {
  require_member(dom, z, "Z", tol);
  require_member(dom, w, "W", tol);
  const Matrix x = dom.x_at(z, tol);
  const Matrix r = w - z;
  const Matrix xr = x * r;
  const double bound = operator_norm(xr);
  if (!(bound < 1.0)) {
    throw Error(ErrorKind::StepBoundViolation,
                "||(CZ+D)^-1 C (W-Z)|| = " + std::to_string(bound) + " is not below 1");
  }
  const auto h = dom.dim_h();
  const Matrix q = principal_sqrt(identity(h) + xr, tol);
  const Matrix y = z + r * checked_inverse(identity(h) + q, tol, "I + Q");
  const Verdict v = member(dom, y, tol);
  if (v != Verdict::Member) {
    throw Error(ErrorKind::Internal, "midpoint Y fell outside the domain (" + std::string(to_string(v)) +
                                         "), space residual " + std::to_string(dom.space().residual(y)));
  }
  return y;
}

Matrix AutomorphismChain::apply(const Matrix& z, const Tolerance& tol) const {
  Matrix out = z;
  for (const auto& y : centers) out = symmetry_apply_cd(c, d, y, out, tol);
  return out;
}

namespace {

struct Refiner {
  const DomainSpec& dom;
  const Tolerance& tol;
  bool supplied;
  std::vector<Matrix> pts;
  std::vector<double> norms;

  [[noreturn]] void singular_waypoint() const {
    throw Error(ErrorKind::PathLeavesDomain,
                "waypoint " + std::to_string(pts.size()) + " of the " + (supplied ? "supplied" : "straight") +
                    " path has CZ+D singular, so no subdivision meets the step bound "
                    "||(CZ_{k-1}+D)^-1 C (Z_k - Z_{k-1})|| < 1; supply a path that stays in the domain");
  }

  /// Appends the dyadic pieces of [a, b] after a; a is already in pts.
  void segment(const Matrix& a, const Matrix& b, int depth) {
    if (member(dom, b, tol) != Verdict::Member) singular_waypoint();
    const double n = step_norm(dom, a, b, tol);
    if (n <= kChainStepMargin) {
      pts.push_back(b);
      norms.push_back(n);
      return;
    }
    if (depth == kChainMaxDoublings) {
      throw Error(ErrorKind::PathLeavesDomain,
                  "step bound ||(CZ_{k-1}+D)^-1 C (Z_k - Z_{k-1})|| < 1 not met after 2^" +
                      std::to_string(kChainMaxDoublings) + " subdivisions; step at waypoint " +
                      std::to_string(pts.size() - 1) + " has norm " + std::to_string(n));
    }
    const Matrix mid = 0.5 * (a + b);
    segment(a, mid, depth + 1);
    segment(mid, b, depth + 1);
  }
};

}  // namespace

AutomorphismChain transitive_chain(const DomainSpec& dom, const Matrix& w0,
                                   const std::optional<std::vector<Matrix>>& path, const Tolerance& tol) {
  const Matrix& z0 = dom.base_point();
  dom.space().require_shape(w0, "target");
  require_member(dom, w0, "target W0", tol);

  std::vector<Matrix> polyline;
  if (path) {
    if (path->size() < 2) throw Error(ErrorKind::InvalidArgument, "path needs at least two points");
    for (std::size_t i = 0; i < path->size(); ++i) {
      dom.space().require_shape((*path)[i], "path point");
      if (member(dom, (*path)[i], tol) != Verdict::Member) {
        throw Error(ErrorKind::PathLeavesDomain, "path point " + std::to_string(i) + " is not in the domain");
      }
    }
    const double scale = 1.0 + z0.norm() + w0.norm();
    if ((path->front() - z0).norm() > tol.eq_tol * scale || (path->back() - w0).norm() > tol.eq_tol * scale) {
      throw Error(ErrorKind::InvalidArgument, "path must start at the base point and end at the target");
    }
    polyline = *path;
    polyline.front() = z0;
    polyline.back() = w0;
  } else {
    polyline = {z0, w0};
  }

  Refiner refine{dom, tol, path.has_value(), {polyline.front()}, {}};
  for (std::size_t s = 0; s + 1 < polyline.size(); ++s) refine.segment(polyline[s], polyline[s + 1], 0);
  std::vector<Matrix> waypoints = std::move(refine.pts);
  std::vector<double> norms = std::move(refine.norms);

  AutomorphismChain chain;
  chain.source = z0;
  chain.target = w0;
  chain.c = dom.c();
  chain.d = dom.d();
  if ((waypoints.size() - 1) % 2 == 1) {
    // U_{Z0} fixes Z0.
    waypoints.insert(waypoints.begin(), z0);
    norms.insert(norms.begin(), 0.0);
    chain.padded = true;
  }
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
    Matrix y = (chain.padded && k == 0) ? z0 : find_midpoint_Y(dom, waypoints[k], waypoints[k + 1], tol);
    chain.factors.push_back(symmetry_U(dom, y, tol));
    chain.centers.push_back(std::move(y));
  }
  chain.waypoints = std::move(waypoints);
  chain.step_norms = std::move(norms);

  chain.folded = AffineMap::identity(dom.dim_k(), dom.dim_h());
  for (std::size_t k = 0; k + 1 < chain.centers.size(); k += 2) {
    chain.folded = chain.folded.then(compose_UU_affine(dom, chain.centers[k + 1], chain.centers[k], tol));
  }
  chain.residual = (chain.apply(z0, tol) - w0).norm();
  return chain;
}

AffineMap affine_phi(const DomainSpec& dom, const Matrix& w0, const Tolerance& tol) {
  require_member(dom, w0, "W0", tol);
  const Matrix& z0 = dom.base_point();
  const Matrix& x0 = dom.x0();
  const Matrix a = w0 - z0;
  const double bound = operator_norm(x0 * a);
  if (!(bound < 1.0)) {
    throw Error(ErrorKind::StepBoundViolation, "||X0 (W0 - Z0)|| = " + std::to_string(bound) + " is not below 1");
  }
  return AffineMap{principal_sqrt(identity(dom.dim_k()) + a * x0, tol),
                   principal_sqrt(identity(dom.dim_h()) + x0 * a, tol), z0, w0};
}

double affine_phi_identity_residual(const DomainSpec& dom, const AffineMap& phi, const Matrix& z) {
  const Matrix& z0 = dom.base_point();
  const Matrix& x0 = dom.x0();
  const Matrix id = identity(dom.dim_h());
  const Matrix lhs = id + x0 * (phi.apply(z) - z0);
  const Matrix rhs = phi.right * (id + x0 * (z - z0)) * phi.right;
  return (lhs - rhs).norm();
}

LFTMap involution_V(const DomainSpec& dom, const Matrix& w0, const Tolerance& tol) {
  const Matrix& z0 = dom.base_point();
  const Matrix& x0 = dom.x0();
  const Matrix a = w0 - z0;
  const double bound = operator_norm(x0 * a);
  if (!(bound < 1.0)) {
    throw Error(ErrorKind::StepBoundViolation, "||X0 (W0 - Z0)|| = " + std::to_string(bound) + " is not below 1");
  }
  const auto k = dom.dim_k();
  const auto h = dom.dim_h();
  const Matrix left = principal_inv_sqrt(identity(k) + a * x0, tol);
  const Matrix right_inv = principal_inv_sqrt(identity(h) + x0 * a, tol);
  // Z0 - left (Z - W0)(I + X0 (Z - Z0))^-1 right, rewritten over the common denominator.
  const Matrix den_c = right_inv * x0;
  const Matrix den_d = right_inv * (identity(h) - x0 * z0);
  return LFTMap(z0 * den_c - left, z0 * den_d + left * w0, den_c, den_d);
}

AffineMap compose_UU_affine(const DomainSpec& dom, const Matrix& w, const Matrix& y, const Tolerance& tol) {
  require_member(dom, w, "W", tol);
  require_member(dom, y, "Y", tol);
  const Matrix x = dom.x_at(y, tol);
  const Matrix wy = w - y;
  return AffineMap{identity(dom.dim_k()) + wy * x, identity(dom.dim_h()) + x * wy, y, symmetry_apply(dom, w, y, tol)};
}

LFTMap potapov_ginzburg(const OperatorSpace& space, const Matrix& e, const Tolerance& tol) {
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "Potapov-Ginzburg transform needs square operators");
  space.require_shape(e, "E");
  if ((e * e - e).norm() > tol.eq_tol * (1.0 + e.norm())) throw Error(ErrorKind::NotIdempotent, "E^2 != E");
  if (!contains(space, e, tol)) throw Error(ErrorKind::MembershipViolation, "E is not in the space");
  if (!closed_under_quadratic(space, e, tol)) throw Error(ErrorKind::ClosureViolation, "Z E Z leaves the space");
  const Matrix id = identity(space.dim_h());
  return LFTMap(e - id, e, e, id - e);
}

bool in_contractive_set(const Matrix& j, const Matrix& z, double margin) {
  return is_positive_definite(j - z.adjoint() * j * z, margin);
}

bool in_unit_ball(const Matrix& z, double margin) {
  return is_positive_definite(identity(z.cols()) - z.adjoint() * z, margin);
}

LiouvilleCurve::LiouvilleCurve(const DomainSpec& dom, const Matrix& z, const Tolerance& tol)
    : z0_(dom.base_point()), c_(dom.c()), d_(dom.d()), tol_(tol) {
  require_member(dom, z, "Z", tol);
  delta_ = z - z0_;
  w_ = dom.x0() * delta_;
  const double bound = operator_norm(w_);
  if (!(bound < 1.0)) {
    throw Error(ErrorKind::StepBoundViolation, "||X0 (Z - Z0)|| = " + std::to_string(bound) + " is not below 1");
  }
  base_den_inv_ = checked_inverse(dom.denominator(z0_), tol, "C Z0 + D");
}

Matrix LiouvilleCurve::operator()(Complex lambda) const {
  return z0_ + delta_ * shifted_binomial_series(lambda, w_, tol_);
}

Matrix LiouvilleCurve::denominator_ratio(Complex lambda) const {
  return base_den_inv_ * (c_ * (*this)(lambda) + d_);
}

LiouvilleCurve liouville_curve(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  return LiouvilleCurve(dom, z, tol);
}

AffineMap affine_equivalence(const DomainSpec& dom1, const DomainSpec& dom2, const Matrix& r, const Matrix& z1,
                             const Matrix& z2, const Tolerance& tol) {
  const auto& s1 = dom1.space();
  const auto& s2 = dom2.space();
  if (s1.dim_k() != s2.dim_k() || s1.dim_h() != s2.dim_h()) {
    throw Error(ErrorKind::ShapeMismatch, "domains act on different shapes");
  }
  const bool full = s1.is_full() && s2.is_full();
  bool shared_algebra = false;
  if (!full && s1.is_square() && s1.dimension() == s2.dimension() && make_power_algebra_check(s1, tol)) {
    shared_algebra = true;
    for (const auto& b : s2.basis()) shared_algebra = shared_algebra && contains(s1, b, tol);
    for (const Matrix* m : {&dom1.c(), &dom1.d(), &dom2.c(), &dom2.d()}) {
      shared_algebra = shared_algebra && contains(s1, *m, tol);
    }
  }
  if (!full && !shared_algebra) {
    throw Error(ErrorKind::HypothesisViolation,
                "affine equivalence needs the full space or one power algebra containing C and D");
  }
  if (r.rows() != s1.dim_k() || r.cols() != s1.dim_k()) throw Error(ErrorKind::ShapeMismatch, "R must be dim_k x dim_k");
  const Matrix r_inv = checked_inverse(r, tol, "R");
  if ((dom2.c() - dom1.c() * r).norm() > tol.eq_tol * (1.0 + dom2.c().norm())) {
    throw Error(ErrorKind::HypothesisViolation, "C2 != C1 R");
  }
  require_member(dom1, z1, "Z1", tol);
  require_member(dom2, z2, "Z2", tol);
  const Matrix right = checked_inverse(dom1.denominator(z1), tol, "C1 Z1 + D1") * dom2.denominator(z2);
  return AffineMap{r_inv, right, z1, z2};
}

}  // namespace lftd
